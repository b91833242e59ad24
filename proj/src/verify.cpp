#include "fsq/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "fsq/detail/linear_search.hpp"
#include "fsq/forms.hpp"
#include "fsq/io.hpp"

namespace fsq {

namespace {

struct ChunkResult {
    std::string jsonl;
    i64 verified = 0;
    std::vector<SweepFailure> failures;
    std::map<std::string, i64> histogram;
};

const char* constraint_name(Constraint c) { return c == Constraint::Square ? "square" : "pow4"; }

class ChunkWorker {
public:
    ChunkWorker(const SweepConfig& cfg, const TwoSquareSieve& sieve, const std::vector<i64>& targets)
        : cfg_(cfg), sieve_(sieve), targets_(targets) {}

    ChunkResult run(i64 lo, i64 hi) const {
        ChunkResult out;
        for (i64 n = lo; n <= hi; ++n) {
            std::optional<Certificate> cert;
            std::string why;
            if (cfg_.method == SweepMethod::Brute) {
                cert = search(n);
                if (!cert) why = exhausted_trace(n);
            } else {
                try {
                    cert = cfg_.constraint == Constraint::Square ? theorem13(n) : theorem14(n);
                } catch (const SearchExhausted& e) {
                    why = e.what();
                }
            }
            if (cert && !verify_certificate(*cert)) {
                why = "certificate failed verification";
                cert.reset();
            }
            if (!cert) {
                out.failures.push_back({n, why});
                continue;
            }
            ++out.verified;
            ++out.histogram[uses_brute_force(*cert) ? "brute" : "constructive"];
            out.jsonl += certificate_json(*cert).dump();
            out.jsonl += '\n';
        }
        return out;
    }

private:
    // Same order as brute_force: targets ascending, y ascending, least (z, w).
    std::optional<Certificate> search(i64 n) const {
        const i64 limit = static_cast<i64>(isqrt(static_cast<u64>(10 * n)));
        const auto end = std::upper_bound(targets_.begin(), targets_.end(), limit);
        std::span<const i64> active(targets_.data(), static_cast<std::size_t>(end - targets_.begin()));
        auto split = [this](i64 rem) -> std::optional<std::pair<i64, i64>> {
            if (!sieve_.test(rem)) return std::nullopt;
            return two_squares(rem);
        };
        auto any = [](i64, i64) { return true; };
        auto hit = detail::search_linear(n, 3, active, cfg_.natural, split, any);
        i64 s = 0;
        if (hit) {
            s = active[hit->target_index];
        } else if (cfg_.constraint == Constraint::Square) {
            // zero last, matching brute_force
            static constexpr i64 zero[] = {0};
            hit = detail::search_linear(n, 3, std::span<const i64>(zero), cfg_.natural, split, any);
        }
        if (!hit) return std::nullopt;
        ConstraintWitness w = cfg_.constraint == Constraint::Square
                                  ? ConstraintWitness{WitnessKind::Square, static_cast<i64>(isqrt(static_cast<u64>(s)))}
                                  : ConstraintWitness{WitnessKind::PowerOf4, *is_power_of_4(s)};
        return Certificate{n, hit->quad, w, cfg_.natural, Trace{Method::BruteForce, "sweep", w.root_or_exponent, false, 1, nullptr}};
    }

    std::string exhausted_trace(i64 n) const {
        std::ostringstream os;
        os << "exhausted " << constraint_name(cfg_.constraint) << " targets s <= " << isqrt(static_cast<u64>(10 * n))
           << (cfg_.natural ? " with x, y >= 0" : " with signed x, y") << ", no two-square remainder";
        return os.str();
    }

    const SweepConfig& cfg_;
    const TwoSquareSieve& sieve_;
    const std::vector<i64>& targets_;
};

std::vector<i64> target_list(Constraint c, i64 limit) {
    std::vector<i64> out;
    if (c == Constraint::Square) {
        for (i64 m = 1; m * m <= limit; ++m) out.push_back(m * m);
    } else {
        for (i64 p = 1; p <= limit; p *= 4) out.push_back(p);
    }
    return out;
}

void validate(const SweepConfig& cfg) {
    if (cfg.from < 1) throw std::invalid_argument("sweep: from must be >= 1");
    if (cfg.from > cfg.to) throw std::invalid_argument("sweep: from must not exceed to");
    if (cfg.to > kMaxN / 16) throw std::invalid_argument("sweep: to out of supported range");
    if (cfg.jobs < 1) throw std::invalid_argument("sweep: jobs must be >= 1");
    if (cfg.chunk < 1) throw std::invalid_argument("sweep: chunk must be >= 1");
    if (cfg.method == SweepMethod::Constructive && cfg.constraint == Constraint::PowerOf4 && cfg.natural)
        throw std::invalid_argument("sweep: the constructive power-of-4 route produces signed decompositions only");
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::trunc);
        if (!f) throw SweepError("cannot write checkpoint " + tmp.string());
        f << content;
        if (!f.flush()) throw SweepError("cannot write checkpoint " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw SweepError("cannot replace checkpoint " + path.string() + ": " + ec.message());
}

i64 parse_i64(std::string_view s, const char* what) {
    i64 v = 0;
    std::size_t used = 0;
    try {
        v = std::stoll(std::string(s), &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw SweepError(std::string("corrupt checkpoint: bad ") + what + " '" + std::string(s) + "'");
    return v;
}

}  // namespace

TwoSquareSieve::TwoSquareSieve(i64 limit) : limit_(limit), bits_(static_cast<std::size_t>(limit / 64 + 1), 0) {
    for (i64 z = 0; 2 * z * z <= limit; ++z) {
        const i64 z2 = z * z;
        for (i64 w = z; z2 + w * w <= limit; ++w) {
            const auto v = static_cast<u64>(z2 + w * w);
            bits_[v >> 6] |= u64{1} << (v & 63);
        }
    }
}

TwoSquareSieve build_sieve(i64 limit) {
    if (limit < 0) throw std::invalid_argument("build_sieve: negative limit");
    if (limit >= kSieveCapBits) throw BoundExceeded("build_sieve: limit above 2^33 bits");
    return TwoSquareSieve(limit);
}

std::string config_fingerprint(const SweepConfig& cfg) {
    std::ostringstream os;
    os << "fsq-sweep-v1|" << cfg.from << '|' << cfg.to << '|' << constraint_name(cfg.constraint) << '|'
       << (cfg.natural ? "natural" : "signed") << '|' << (cfg.method == SweepMethod::Brute ? "brute" : "constructive");
    const std::string key = os.str();
    u64 h = 14695981039346656037ULL;
    for (unsigned char ch : key) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << h;
    return hex.str();
}

std::string serialize_checkpoint(const CheckpointState& s) {
    std::ostringstream os;
    os << s.fingerprint << '\n' << s.last_completed << '\n' << s.verified << '\n';
    for (const auto& [name, count] : s.method_histogram) os << "histogram " << name << ' ' << count << '\n';
    for (const auto& f : s.failures) os << "failure " << f.n << ' ' << f.trace << '\n';
    return os.str();
}

CheckpointState parse_checkpoint(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        auto nl = text.find('\n');
        lines.push_back(text.substr(0, nl));
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    if (lines.size() < 3) throw SweepError("corrupt checkpoint: expected at least three lines");
    CheckpointState s;
    s.fingerprint = std::string(lines[0]);
    if (s.fingerprint.size() != 16 || s.fingerprint.find_first_not_of("0123456789abcdef") != std::string::npos)
        throw SweepError("corrupt checkpoint: bad fingerprint line");
    s.last_completed = parse_i64(lines[1], "last completed n");
    s.verified = parse_i64(lines[2], "verified count");
    for (std::size_t i = 3; i < lines.size(); ++i) {
        std::string_view l = lines[i];
        if (l.empty()) continue;
        auto sp = l.find(' ');
        std::string_view tag = l.substr(0, sp);
        std::string_view rest = sp == std::string_view::npos ? std::string_view{} : l.substr(sp + 1);
        auto sp2 = rest.find(' ');
        if (sp2 == std::string_view::npos) throw SweepError("corrupt checkpoint: malformed line " + std::to_string(i + 1));
        if (tag == "histogram") {
            s.method_histogram[std::string(rest.substr(0, sp2))] = parse_i64(rest.substr(sp2 + 1), "histogram count");
        } else if (tag == "failure") {
            s.failures.push_back({parse_i64(rest.substr(0, sp2), "failure n"), std::string(rest.substr(sp2 + 1))});
        } else {
            throw SweepError("corrupt checkpoint: unknown line " + std::to_string(i + 1));
        }
    }
    return s;
}

SweepReport sweep(const SweepConfig& cfg, std::ostream* jsonl) {
    validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const std::string fingerprint = config_fingerprint(cfg);

    SweepReport report;
    report.last_completed = cfg.from - 1;
    bool resuming = false;
    if (cfg.checkpoint_path && std::filesystem::exists(*cfg.checkpoint_path)) {
        std::ifstream f(*cfg.checkpoint_path);
        if (!f) throw SweepError("cannot read checkpoint " + cfg.checkpoint_path->string());
        std::stringstream buf;
        buf << f.rdbuf();
        CheckpointState st = parse_checkpoint(buf.str());
        if (st.fingerprint != fingerprint) throw SweepError("checkpoint was written for a different configuration");
        if (st.last_completed < cfg.from - 1 || st.last_completed > cfg.to)
            throw SweepError("corrupt checkpoint: last completed n outside the configured range");
        report.last_completed = st.last_completed;
        report.verified_count = st.verified;
        report.method_histogram = st.method_histogram;
        report.failures = st.failures;
        resuming = true;
    }

    std::ofstream file;
    if (cfg.output_path) {
        file.open(*cfg.output_path, resuming ? std::ios::app : std::ios::trunc);
        if (!file) throw SweepError("cannot open output " + cfg.output_path->string());
        jsonl = &file;
    }

    i64 end = cfg.to;
    if (cfg.halt_after) {
        const i64 h = std::clamp(*cfg.halt_after, cfg.from, cfg.to);
        end = std::min(cfg.to, cfg.from + ((h - cfg.from) / cfg.chunk + 1) * cfg.chunk - 1);
    }

    const TwoSquareSieve sieve = cfg.method == SweepMethod::Brute ? build_sieve(end) : TwoSquareSieve();
    const std::vector<i64> targets = target_list(cfg.constraint, static_cast<i64>(isqrt(static_cast<u64>(10 * end))));
    const ChunkWorker worker(cfg, sieve, targets);

    const i64 start = report.last_completed + 1;
    const i64 wave_size = static_cast<i64>(cfg.jobs) * 4;
    for (i64 wave_lo = start; wave_lo <= end;) {
        std::vector<std::pair<i64, i64>> chunks;
        for (i64 lo = wave_lo; lo <= end && static_cast<i64>(chunks.size()) < wave_size; lo += cfg.chunk)
            chunks.emplace_back(lo, std::min(end, lo + cfg.chunk - 1));
        std::vector<ChunkResult> results(chunks.size());
        std::atomic<std::size_t> next{0};
        auto drain = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < chunks.size();) results[i] = worker.run(chunks[i].first, chunks[i].second);
        };
        {
            std::vector<std::jthread> pool;
            const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), chunks.size()));
            for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
            drain();
        }
        for (auto& r : results) {
            if (jsonl) *jsonl << r.jsonl;
            report.verified_count += r.verified;
            report.failures.insert(report.failures.end(), r.failures.begin(), r.failures.end());
            for (const auto& [k, v] : r.histogram) report.method_histogram[k] += v;
        }
        report.last_completed = chunks.back().second;
        if (jsonl && !jsonl->flush()) throw SweepError("write to output failed");
        if (cfg.checkpoint_path) {
            CheckpointState st{fingerprint, report.last_completed, report.verified_count, report.method_histogram, report.failures};
            write_file_atomically(*cfg.checkpoint_path, serialize_checkpoint(st));
        }
        wave_lo = report.last_completed + 1;
    }

    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const i64 done = report.last_completed - start + 1;
    report.throughput = report.wall_seconds > 0 ? static_cast<double>(std::max<i64>(done, 0)) / report.wall_seconds : 0;
    return report;
}

}  // namespace fsq
