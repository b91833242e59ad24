#pragma once

// Range verification: every n in [from, to] gets a certificate, found either by
// the canonical exhaustive search (accelerated by a two-square bitmap) or by
// the constructions in decompose.hpp. Work is split into fixed-size chunks
// handled by a worker pool; results are merged in ascending n so output and
// report do not depend on the number of workers.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fsq/decompose.hpp"

namespace fsq {

class TwoSquareSieve {
public:
    TwoSquareSieve() = default;
    explicit TwoSquareSieve(i64 limit);

    i64 limit() const { return limit_; }
    /// N is a sum of two squares. Requires 0 <= N <= limit().
    bool test(i64 N) const { return (bits_[static_cast<u64>(N) >> 6] >> (static_cast<u64>(N) & 63)) & 1; }

private:
    i64 limit_ = -1;
    std::vector<u64> bits_;
};

inline constexpr i64 kSieveCapBits = i64{1} << 33;

/// Bitmap of {z^2 + w^2 <= limit}. Throws BoundExceeded above kSieveCapBits.
TwoSquareSieve build_sieve(i64 limit);

enum class SweepMethod { Brute, Constructive };

struct SweepConfig {
    i64 from = 1;
    i64 to = 1;
    Constraint constraint = Constraint::Square;
    bool natural = true;
    SweepMethod method = SweepMethod::Brute;
    int jobs = 1;
    i64 chunk = 10'000;
    std::optional<std::filesystem::path> checkpoint_path;
    std::optional<std::filesystem::path> output_path;
    /// Stop once the chunk containing this n is done, as if interrupted. Not part of the fingerprint.
    std::optional<i64> halt_after;
};

struct SweepFailure {
    i64 n = 0;
    std::string trace;

    friend bool operator==(const SweepFailure&, const SweepFailure&) = default;
};

struct SweepReport {
    i64 verified_count = 0;
    std::vector<SweepFailure> failures;
    std::map<std::string, i64> method_histogram;  // "brute" / "constructive"
    i64 last_completed = 0;
    double wall_seconds = 0;
    double throughput = 0;  // n per second

    /// Equality ignoring timing.
    bool same_outcome(const SweepReport& o) const {
        return verified_count == o.verified_count && failures == o.failures && method_histogram == o.method_histogram &&
               last_completed == o.last_completed;
    }
};

class SweepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument for an invalid config, SweepError on I/O or checkpoint problems.
/// JSONL goes to cfg.output_path when set, otherwise to `jsonl` when non-null.
SweepReport sweep(const SweepConfig& cfg, std::ostream* jsonl = nullptr);

/// Stable 64-bit FNV-1a fingerprint (16 hex digits) of everything that determines sweep results.
std::string config_fingerprint(const SweepConfig& cfg);

struct CheckpointState {
    std::string fingerprint;
    i64 last_completed = 0;
    i64 verified = 0;
    std::map<std::string, i64> method_histogram;
    std::vector<SweepFailure> failures;

    friend bool operator==(const CheckpointState&, const CheckpointState&) = default;
};

/// Lines: fingerprint, last completed n, verified count; then optional
/// "histogram <name> <count>" and "failure <n> <trace>" lines.
std::string serialize_checkpoint(const CheckpointState& s);
/// Throws SweepError with a message naming the bad line.
CheckpointState parse_checkpoint(std::string_view text);

}  // namespace fsq
