#pragma once

// Canonical exhaustive search shared by brute_force and the range sweep:
// for each target s (in the given order), each y ascending with
// x = s - coef*y and x^2 + y^2 <= n, ask `split` for z, w with
// z^2 + w^2 = n - x^2 - y^2.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "fsq/arith.hpp"
#include "fsq/decompose.hpp"

namespace fsq::detail {

constexpr i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

struct LinearHit {
    Quad quad;
    std::size_t target_index = 0;
};

/// Range of integer y with (s - coef*y)^2 + y^2 <= n, padded by one on each
/// side; callers re-check the remainder sign.
inline std::optional<std::pair<i64, i64>> y_window(i64 n, i64 coef, i64 s) {
    const i64 k = coef * coef + 1;
    i128 disc = i128{k} * n - square(s);
    if (disc < 0) return std::nullopt;
    auto root = static_cast<i64>(isqrt(static_cast<u128>(disc))) + 1;
    return std::pair{floor_div(coef * s - root, k), floor_div(coef * s + root, k) + 1};
}

/// Split: i64 remainder -> std::optional<std::pair<i64, i64>>. Extra: (x, y) -> bool.
template <typename Split, typename Extra>
std::optional<LinearHit> search_linear(i64 n, i64 coef, std::span<const i64> targets, bool natural, Split&& split,
                                       Extra&& extra) {
    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        const i64 s = targets[ti];
        auto win = y_window(n, coef, s);
        if (!win) continue;
        auto [ylo, yhi] = *win;
        if (natural) {
            ylo = std::max<i64>(ylo, 0);
            yhi = std::min<i64>(yhi, floor_div(s, coef));
        }
        for (i64 y = ylo; y <= yhi; ++y) {
            const i64 x = s - coef * y;
            const i128 rem = i128{n} - square(x) - square(y);
            if (rem < 0) continue;
            if (!extra(x, y)) continue;
            if (auto zw = split(static_cast<i64>(rem))) return LinearHit{Quad{x, y, zw->first, zw->second}, ti};
        }
    }
    return std::nullopt;
}

}  // namespace fsq::detail
