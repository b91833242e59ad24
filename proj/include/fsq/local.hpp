#pragma once

// Finite, checkable consequences of local (p-adic) representability.
// Nothing here models Z_p itself; every verdict is backed by a residue
// computation modulo an explicit modulus.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "fsq/forms.hpp"

namespace fsq {

struct LocalReport {
    i64 prime = 2;
    bool represented = false;
    i64 modulus = 1;
    std::optional<Vec3> witness;  // eval(form, witness) == N (mod modulus)
    std::string note;
};

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr i64 kDiagonalModulusCap = i64{1} << 24;
inline constexpr i64 kGeneralModulusCap = i64{1} << 12;

/// A triple v (entries in [0, M)) with form(v) == N mod M, if one exists.
///
/// Diagonal forms combine the value sets of a*x^2, b*y^2, c*z^2 mod M; above
/// M = 4096 the pairwise sumset is a cyclic boolean convolution done by FFT.
/// Other forms enumerate (x, z) and look y up in a per-linear-term table, O(M^2).
std::optional<Vec3> represents_mod(const TernaryForm& form, i64 N, i64 M);

/// Jones' criterion: n is represented by the form over Z_2 iff
/// form == n (mod 2^(r+1)) is solvable, r = ord2(4n).
LocalReport jones_2adic(const TernaryForm& form, i64 n);

/// Unit case of 5-adic representability by x^2 + 10y^2 + 10z^2: the x^2 term must
/// carry the unit, so N is represented iff N == +-1 (mod 5). Throws std::invalid_argument if 5 | N.
bool five_adic_unit_represents_F(i64 N);

/// Every residue mod p is a value of the form at a point with nonzero gradient mod p,
/// so each lifts to Z_p. Requires p an odd prime <= 10^4 not dividing det(gram2).
bool unimodular_all_residues(const TernaryForm& form, i64 p);

struct TwoAdicUnitsFact {
    bool holds = false;
    /// witnesses[i] attains residue 2i+1 mod 8 under 2x^2 + 5y^2 + 5z^2 with y or z odd.
    std::array<std::optional<Vec3>, 4> witnesses;
};

/// Each odd class mod 8 is a value of 2x^2 + 5y^2 + 5z^2 at a point with an odd
/// coordinate in a 5-slot; such a value lifts to every 2-adic unit in that class.
TwoAdicUnitsFact verify_two_adic_units_fact();

}  // namespace fsq
