#include "fsq/arith.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace fsq {

namespace {

template <typename U>
int bit_width_of(U n) {
    int w = 0;
    while (n != 0) {
        n >>= 1;
        ++w;
    }
    return w;
}

template <typename U>
U isqrt_newton(U n) {
    if (n < 2) return n;
    // 2^ceil(w/2) >= sqrt(n); Newton decreases monotonically from above.
    U x = U{1} << ((bit_width_of(n) + 1) / 2);
    for (;;) {
        U next = (x + n / x) / 2;
        if (next >= x) break;
        x = next;
    }
    // one-step correction
    while (x * x > n) --x;
    while ((x + 1) * (x + 1) <= n) ++x;
    return x;
}

// Quadratic residue filters; a square must pass every one of them.
struct SquareFilter {
    std::array<bool, 64> m64{};
    std::array<bool, 63> m63{};
    std::array<bool, 65> m65{};
    std::array<bool, 11> m11{};
    constexpr SquareFilter() {
        for (int i = 0; i < 64; ++i) m64[(i * i) % 64] = true;
        for (int i = 0; i < 63; ++i) m63[(i * i) % 63] = true;
        for (int i = 0; i < 65; ++i) m65[(i * i) % 65] = true;
        for (int i = 0; i < 11; ++i) m11[(i * i) % 11] = true;
    }
};

constexpr SquareFilter kFilter{};

}  // namespace

u64 isqrt(u64 n) {
    if (n < 2) return n;
    u64 x = u64{1} << ((std::bit_width(n) + 1) / 2);
    for (;;) {
        u64 next = (x + n / x) / 2;
        if (next >= x) break;
        x = next;
    }
    // x <= 2^32 here, so (x+1)^2 only overflows for n near 2^64
    while (u128{x} * x > n) --x;
    while (u128{x + 1} * (x + 1) <= n) ++x;
    return x;
}

u128 isqrt(u128 n) {
    if ((n >> 64) == 0) return isqrt(static_cast<u64>(n));
    return isqrt_newton(n);
}

u64 ifourth_root_floor(u64 n) { return isqrt(isqrt(n)); }
u128 ifourth_root_floor(u128 n) { return isqrt(isqrt(n)); }

u64 ifourth_root_ceil(u64 n) {
    u64 r = ifourth_root_floor(n);
    u128 r2 = u128{r} * r;
    return r2 * r2 < n ? r + 1 : r;
}

u128 ifourth_root_ceil(u128 n) {
    u128 r = ifourth_root_floor(n);
    u128 r2 = r * r;
    return r2 * r2 < n ? r + 1 : r;
}

std::optional<i64> is_square(i64 n) {
    if (n < 0) return std::nullopt;
    auto u = static_cast<u64>(n);
    if (!kFilter.m64[u & 63] || !kFilter.m63[u % 63] || !kFilter.m65[u % 65] || !kFilter.m11[u % 11])
        return std::nullopt;
    u64 r = isqrt(u);
    if (r * r != u) return std::nullopt;
    return static_cast<i64>(r);
}

std::optional<int> is_power_of_4(i64 n) {
    if (n <= 0) return std::nullopt;
    auto u = static_cast<u64>(n);
    if (!std::has_single_bit(u)) return std::nullopt;
    int e = std::countr_zero(u);
    if (e % 2 != 0) return std::nullopt;
    return e / 2;
}

int ord2(u64 n) {
    if (n == 0) throw std::domain_error("ord2: valuation of 0 is undefined");
    return std::countr_zero(n);
}

}  // namespace fsq
