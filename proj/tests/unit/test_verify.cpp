#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "fsq/io.hpp"
#include "fsq/verify.hpp"

using namespace fsq;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("fsq_verify_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

SweepConfig base(i64 from, i64 to, Constraint c, bool natural) {
    SweepConfig cfg;
    cfg.from = from;
    cfg.to = to;
    cfg.constraint = c;
    cfg.natural = natural;
    return cfg;
}

}  // namespace

TEST_CASE("two-square sieve") {
    auto s = build_sieve(100);
    CHECK(s.test(0));
    CHECK(s.test(1));
    CHECK(s.test(2));
    CHECK_FALSE(s.test(3));
    CHECK(s.test(25));
    CHECK_FALSE(s.test(21));
    CHECK(s.test(50));
    CHECK_THROWS_AS(build_sieve(kSieveCapBits), BoundExceeded);
    CHECK_THROWS_AS(build_sieve(-1), std::invalid_argument);
}

TEST_CASE("two-square sieve is exact to 10^6") {
    const i64 L = 1'000'000;
    auto s = build_sieve(L);
    std::vector<bool> truth(L + 1, false);
    for (i64 a = 0; a * a <= L; ++a)
        for (i64 b = a; a * a + b * b <= L; ++b) truth[a * a + b * b] = true;
    for (i64 N = 0; N <= L; ++N) REQUIRE(s.test(N) == truth[N]);
}

TEST_CASE("square natural sweep over [1, 10^4]") {
    std::ostringstream out;
    auto r = sweep(base(1, 10000, Constraint::Square, true), &out);
    CHECK(r.verified_count == 10000);
    CHECK(r.failures.empty());
    CHECK(r.last_completed == 10000);
    CHECK(r.method_histogram.at("brute") == 10000);
    std::istringstream lines(out.str());
    std::string line;
    i64 count = 0;
    while (std::getline(lines, line)) {
        auto j = nlohmann::json::parse(line);
        ++count;
        REQUIRE(j["n"].get<i64>() == count);
        const i64 x = j["x"], y = j["y"], z = j["z"], w = j["w"];
        const i64 s = j["s"];
        REQUIRE(x * x + y * y + z * z + w * w == count);
        REQUIRE(x + 3 * y == s);
        REQUIRE(is_square(s));
        REQUIRE(j["kind"] == "square");
    }
    CHECK(count == 10000);
}

TEST_CASE("sweep JSONL matches brute_force") {
    std::ostringstream out;
    sweep(base(1, 2000, Constraint::Square, true), &out);
    std::istringstream lines(out.str());
    std::string line;
    for (i64 n = 1; std::getline(lines, line); ++n) {
        auto j = nlohmann::json::parse(line);
        auto c = brute_force(n, Constraint::Square, true);
        REQUIRE(c);
        REQUIRE(Quad{j["x"].get<i64>(), j["y"].get<i64>(), j["z"].get<i64>(), j["w"].get<i64>()} == c->quad);
    }
}

TEST_CASE("power-of-4 sweeps") {
    auto signed_r = sweep(base(1, 10000, Constraint::PowerOf4, false));
    CHECK(signed_r.verified_count == 10000);
    CHECK(signed_r.failures.empty());

    auto nat = sweep(base(1, 10000, Constraint::PowerOf4, true));
    CHECK_FALSE(nat.failures.empty());
    CHECK(nat.verified_count + static_cast<i64>(nat.failures.size()) == 10000);
    std::vector<i64> failed;
    for (const auto& f : nat.failures) failed.push_back(f.n);
    CHECK(std::find(failed.begin(), failed.end(), 8) != failed.end());
    CHECK(std::find(failed.begin(), failed.end(), 128) != failed.end());
    CHECK(failed.front() == 8);
    for (i64 n : failed) REQUIRE_FALSE(brute_force(n, Constraint::PowerOf4, true));
}

TEST_CASE("constructive sweep") {
    SweepConfig cfg = base(1, 5000, Constraint::Square, true);
    cfg.method = SweepMethod::Constructive;
    auto r = sweep(cfg);
    CHECK(r.verified_count == 5000);
    CHECK(r.method_histogram["constructive"] + r.method_histogram["brute"] == 5000);
    CHECK(r.method_histogram["constructive"] > 0);

    SweepConfig bad = base(1, 10, Constraint::PowerOf4, true);
    bad.method = SweepMethod::Constructive;
    CHECK_THROWS_AS(sweep(bad), std::invalid_argument);
}

TEST_CASE("invalid configurations") {
    CHECK_THROWS_AS(sweep(base(0, 10, Constraint::Square, true)), std::invalid_argument);
    CHECK_THROWS_AS(sweep(base(10, 5, Constraint::Square, true)), std::invalid_argument);
    SweepConfig c = base(1, 10, Constraint::Square, true);
    c.jobs = 0;
    CHECK_THROWS_AS(sweep(c), std::invalid_argument);
}

TEST_CASE("results do not depend on the number of workers") {
    std::string first;
    SweepReport first_report;
    for (int jobs : {1, 2, 3, 8}) {
        SweepConfig cfg = base(1, 30000, Constraint::PowerOf4, true);
        cfg.jobs = jobs;
        cfg.chunk = 1000;
        std::ostringstream out;
        auto r = sweep(cfg, &out);
        if (jobs == 1) {
            first = out.str();
            first_report = r;
        } else {
            REQUIRE(out.str() == first);
            REQUIRE(r.same_outcome(first_report));
        }
    }
}

TEST_CASE("checkpoint serialization round trip") {
    CheckpointState s{"0123456789abcdef", 500, 498, {{"brute", 498}}, {{8, "exhausted pow4"}, {128, "exhausted"}}};
    const std::string text = serialize_checkpoint(s);
    CHECK(text.rfind("0123456789abcdef\n500\n498\n", 0) == 0);
    CHECK(parse_checkpoint(text) == s);
    CHECK_THROWS_AS(parse_checkpoint("garbage"), SweepError);
    CHECK_THROWS_AS(parse_checkpoint("0123456789abcdef\nx\n1\n"), SweepError);
    CHECK_THROWS_AS(parse_checkpoint("0123456789abcdef\n1\n1\nbogus line here\n"), SweepError);
}

TEST_CASE("fingerprint depends on result-determining fields only") {
    SweepConfig a = base(1, 100, Constraint::Square, true);
    SweepConfig b = a;
    b.jobs = 7;
    b.chunk = 3;
    b.halt_after = 50;
    CHECK(config_fingerprint(a) == config_fingerprint(b));
    CHECK(config_fingerprint(a).size() == 16);
    b.natural = false;
    CHECK(config_fingerprint(a) != config_fingerprint(b));
    SweepConfig c = a;
    c.to = 101;
    CHECK(config_fingerprint(a) != config_fingerprint(c));
}

TEST_CASE("interrupted sweep resumes to the same result") {
    TempDir dir;
    SweepConfig full = base(1, 20000, Constraint::PowerOf4, true);
    full.chunk = 1000;
    full.output_path = dir.path / "full.jsonl";
    auto whole = sweep(full);

    SweepConfig part = full;
    part.output_path = dir.path / "part.jsonl";
    part.checkpoint_path = dir.path / "ck.txt";
    part.halt_after = 7500;
    auto first = sweep(part);
    CHECK(first.last_completed == 8000);
    CHECK(fs::exists(*part.checkpoint_path));
    CHECK(parse_checkpoint(slurp(*part.checkpoint_path)).last_completed == 8000);

    part.halt_after.reset();
    part.jobs = 2;
    auto second = sweep(part);
    CHECK(second.same_outcome(whole));
    CHECK(slurp(*part.output_path) == slurp(*full.output_path));

    // a finished checkpoint makes a rerun a no-op
    auto third = sweep(part);
    CHECK(third.same_outcome(whole));
    CHECK(slurp(*part.output_path) == slurp(*full.output_path));
}

TEST_CASE("missing checkpoint starts fresh, foreign checkpoint is refused") {
    TempDir dir;
    SweepConfig cfg = base(1, 3000, Constraint::Square, true);
    cfg.checkpoint_path = dir.path / "ck.txt";
    auto r = sweep(cfg);
    CHECK(r.verified_count == 3000);

    SweepConfig other = cfg;
    other.to = 4000;
    CHECK_THROWS_AS(sweep(other), SweepError);

    {
        std::ofstream f(*cfg.checkpoint_path, std::ios::trunc);
        f << "not a checkpoint\n";
    }
    CHECK_THROWS_AS(sweep(cfg), SweepError);
}
