#pragma once

// Exact integer kernels shared by the rest of the library.
//
// Supported range: inputs n <= 2^60. Quantities such as 10n or m^4 that can
// exceed 64 bits are formed in 128-bit intermediates (see `wide`).

#include <cstdint>
#include <optional>

namespace fsq {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

/// Largest n accepted by the decomposition and sweep entry points.
inline constexpr i64 kMaxN = i64{1} << 60;

/// Floor square root, exact. Newton iteration from a power-of-two upper bound.
u64 isqrt(u64 n);
u128 isqrt(u128 n);

/// Largest r with r^4 <= n.
u64 ifourth_root_floor(u64 n);
u128 ifourth_root_floor(u128 n);
/// Smallest r with r^4 >= n.
u64 ifourth_root_ceil(u64 n);
u128 ifourth_root_ceil(u128 n);

/// Root of n when n is a perfect square (negative n is never a square).
std::optional<i64> is_square(i64 n);

/// k with n == 4^k, k >= 0.
std::optional<int> is_power_of_4(i64 n);

/// 2-adic valuation. Throws std::domain_error for n == 0.
int ord2(u64 n);

/// Least non-negative residue.
constexpr i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

constexpr i128 square(i128 v) { return v * v; }

}  // namespace fsq
