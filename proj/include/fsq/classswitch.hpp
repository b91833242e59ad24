#pragma once

// Explicit maps between representations by g = 4X^2+5Y^2+6Z^2+4ZX and
// f = X^2+10Y^2+10Z^2:
//   alpha(x, y, z) = (x + z, y, -z)                  g(alpha v) = g(v)
//   phi(X, Y, Z)   = ((X - Y - Z)/2, Z - Y, Y + Z)   g(phi v)  = f(v)
//   psi(x, y, z)   = (2x + z, (z - y)/2, (y + z)/2)  f(psi v)  = g(v), psi = phi^-1
// phi and psi are only integral on an index-2 sublattice.

#include <optional>
#include <string_view>

#include "fsq/forms.hpp"

namespace fsq {

/// A rational 3x3 map numerator / denominator.
struct SwitchMap {
    std::string_view name;
    Mat3 numerator;
    i64 denominator = 1;

    /// Image of v, or empty when it is not integral.
    std::optional<Vec3> apply(const Vec3& v) const;
};

const SwitchMap& automorph_alpha();
const SwitchMap& iso_forward_phi();
const SwitchMap& iso_backward_psi();

Vec3 alpha(const Vec3& v);
/// Defined when X == Y + Z (mod 2).
std::optional<Vec3> phi(const Vec3& v);
/// Defined when y == z (mod 2).
std::optional<Vec3> psi(const Vec3& v);

inline constexpr int kDefaultSwitchDepth = 4;

/// Best-effort conversion of a g-representation into an f-representation of the
/// same value: psi is tried on every point reachable from v by up to `depth`
/// applications of alpha, y -> -y and global negation. Empty if none is integral;
/// this does not mean the value is outside Q(f).
std::optional<Vec3> try_switch_to_F(const Vec3& v, int depth = kDefaultSwitchDepth);

}  // namespace fsq
