#pragma once

// Certified four-square decompositions n = x^2 + y^2 + z^2 + w^2 with a
// linear side condition on (x, y):
//   theorem13: x, y, z, w >= 0 and x + 3y a perfect square,
//   theorem14: x, y, z, w signed and x + 3y a power of 4 (in {1, 4} when 4 does not divide n),
// plus the two auxiliary constructions they are built from (lemma23, lemma24).
//
// Every construction follows the same pattern: pick a parameter m from an
// interval, represent K*n - S^2 by a ternary form (f = x^2+10y^2+10z^2 for
// x + 3y = S, h = x^2+5y^2+5z^2 for x + 2y = S), normalize the sign of the
// first coordinate, then read off y and x. When no parameter in the interval
// works the search widens to every parameter, then to brute force, so the
// public entry points are total on their domains.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsq/arith.hpp"
#include "fsq/forms.hpp"

namespace fsq {

struct Quad {
    i64 x = 0, y = 0, z = 0, w = 0;

    i128 norm() const { return square(x) + square(y) + square(z) + square(w); }
    Quad scaled(i64 k) const { return {x * k, y * k, z * k, w * k}; }
    bool is_natural() const { return x >= 0 && y >= 0 && z >= 0 && w >= 0; }

    friend bool operator==(const Quad&, const Quad&) = default;
};

enum class Constraint { Square, PowerOf4 };

enum class WitnessKind {
    Square,            // x + 3y = m^2
    PowerOf4,          // x + 3y = 4^k
    TwiceSquare,       // x + 3y = 2 m^2
    SquareX2Y,         // x + 2y = m^2
    SquareX2YOrdered,  // x + 2y = m^2 and x <= y
};

struct ConstraintWitness {
    WitnessKind kind = WitnessKind::Square;
    i64 root_or_exponent = 0;  // m, or k for PowerOf4

    /// The value the linear form must equal (m^2, 4^k or 2m^2).
    i64 value() const;

    friend bool operator==(const ConstraintWitness&, const ConstraintWitness&) = default;
};

enum class Method { BruteForce, Constructive, Recursive };

struct Certificate;

struct Trace {
    Method method = Method::BruteForce;
    std::string step;      // which construction produced the quad
    i64 parameter = 0;     // m, epsilon or eta of the construction
    bool extended = false; // parameter taken outside the proof's interval
    i64 scale = 1;         // Recursive: quad = scale * child quad (1 for the doubling identity)
    std::shared_ptr<const Certificate> child;
};

struct Certificate {
    i64 n = 0;
    Quad quad;
    ConstraintWitness witness;
    bool natural = false;
    Trace trace;
};

/// Thrown when every route of a construction fails. Carries the attempted routes.
class SearchExhausted : public std::runtime_error {
public:
    SearchExhausted(i64 n, const std::string& trace)
        : std::runtime_error("no decomposition found for n = " + std::to_string(n) + ": " + trace), n_(n) {}
    i64 n() const { return n_; }

private:
    i64 n_;
};

/// Recomputes the norm, sign and witness identities (and those of any child).
bool verify_certificate(const Certificate& c);

/// True when the certificate, or any certificate it was derived from, came from brute force.
bool uses_brute_force(const Certificate& c);

inline constexpr i64 kBruteForceCap = 1'000'000'000;

/// Exhaustive search in canonical order: constraint value s ascending (positive
/// squares followed by 0, or powers of 4), then y ascending with x = s - 3y, then the least
/// two-square split of the remainder. Empty if no decomposition exists.
/// Throws std::invalid_argument for n < 1 and BoundExceeded above `cap`.
std::optional<Certificate> brute_force(i64 n, Constraint constraint, bool natural, i64 cap = kBruteForceCap);

/// u or -u, whichever is congruent to target mod modulus (u first).
std::optional<i64> sign_normalize(i64 u, i64 modulus, i64 target);

/// Parameters m for theorem13 when 4 does not divide n: all m with 9n <= m^4 <= 10n,
/// m odd and 5 not dividing m if n == 1, 2 (mod 4), 4 | m and 5 not dividing m if n == 3 (mod 4).
/// Ascending. Throws std::invalid_argument if 4 | n.
std::vector<i64> choose_m(i64 n);

/// m for lemma23: 9n <= 2m^4, m^4 <= 5n, m == (n-1)/2 (mod 2).
std::vector<i64> lemma23_m_candidates(i64 n);
/// m for lemma24 with n odd: 9n <= 4m^4 <= 10n, m odd, 5 not dividing m.
std::vector<i64> lemma24_m_candidates(i64 n);

/// Odd n: natural quad with x <= y and x + 2y = m^2 (witness SquareX2YOrdered).
Certificate lemma23(i64 n);
/// 4 not dividing n: natural quad with x + 3y = 2m^2 (witness TwiceSquare).
Certificate lemma24(i64 n);
/// Natural quad with x + 3y a square.
Certificate theorem13(i64 n);
/// Signed quad with x + 3y = 4^k; k in {0, 1} when 4 does not divide n.
Certificate theorem14(i64 n);

enum class Lemma22Case { I, II, III };

/// Pairs (n, param) meeting the hypotheses of the chosen case for which
/// 10n - param^2 is not represented by x^2 + 10y^2 + 10z^2:
///   I:   n == 1, 2 (mod 4), param odd,
///   II:  n == 3 (mod 4), 4 | param,
///   III: n odd, param == 2 (mod 4),
/// always with 5 not dividing param and 0 < param <= sqrt(10n).
/// param_bound <= 0 means no extra bound on param.
std::vector<std::pair<i64, i64>> lemma22_scan(Lemma22Case which, i64 n_bound, i64 param_bound = 0);

const char* to_string(Method m);
const char* to_string(WitnessKind k);

}  // namespace fsq
