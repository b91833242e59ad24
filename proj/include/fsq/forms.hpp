#pragma once

// Integral positive definite ternary quadratic forms
//   a X^2 + b Y^2 + c Z^2 + r YZ + s ZX + t XY
// and bounded representation solvers.

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fsq/arith.hpp"

namespace fsq {

using Vec3 = Eigen::Matrix<i64, 3, 1>;
using Mat3 = Eigen::Matrix<i64, 3, 3>;

struct TernaryForm {
    i64 a = 0, b = 0, c = 0;  // X^2, Y^2, Z^2
    i64 r = 0, s = 0, t = 0;  // YZ, ZX, XY

    /// Doubled Gram matrix 2*M_f. Integral with even diagonal.
    Mat3 gram2() const;
    /// det(gram2) == 8 * det(M_f).
    i64 det_gram2() const;
    bool is_diagonal() const { return r == 0 && s == 0 && t == 0; }
    /// Leading principal minors of gram2 all positive.
    bool is_positive_definite() const;

    i128 value(i64 x, i64 y, i64 z) const {
        return i128{a} * x * x + i128{b} * y * y + i128{c} * z * z + i128{r} * y * z + i128{s} * z * x +
               i128{t} * x * y;
    }

    friend bool operator==(const TernaryForm&, const TernaryForm&) = default;
};

/// The three forms that carry the constructions:
///   f = X^2 + 10Y^2 + 10Z^2, g = 4X^2 + 5Y^2 + 6Z^2 + 4ZX, h = X^2 + 5Y^2 + 5Z^2.
/// f and g represent the two classes of one genus.
struct NamedForms {
    TernaryForm f{1, 10, 10, 0, 0, 0};
    TernaryForm g{4, 5, 6, 0, 4, 0};
    TernaryForm h{1, 5, 5, 0, 0, 0};
};

inline constexpr NamedForms kForms{};
inline const TernaryForm& kF = kForms.f;
inline const TernaryForm& kG = kForms.g;
inline const TernaryForm& kH = kForms.h;

/// Exact value of the form at v. Throws std::overflow_error if it leaves i64.
i64 eval(const TernaryForm& form, const Vec3& v);
inline i64 eval(const TernaryForm& form, i64 x, i64 y, i64 z) { return eval(form, Vec3(x, y, z)); }

/// v^T * gram2 * v / 2, computed through Eigen. Used as an independent check of eval.
i64 eval_bilinear(const TernaryForm& form, const Vec3& v);

struct Rep3 {
    Vec3 v = Vec3::Zero();
    TernaryForm form;
    i64 value = 0;

    i64 x() const { return v(0); }
    i64 y() const { return v(1); }
    i64 z() const { return v(2); }
};

using RepPredicate = std::function<bool(const Vec3&)>;

/// First representation of N in canonical order that satisfies `accept`.
///
/// Canonical order: |z| ascending, then |y| ascending; at each (|z|, |y|) the
/// signs of z, then y, then x are tried with the non-negative choice first.
/// For non-diagonal forms x is the integral root of the quadratic in X, and the
/// two roots are taken in order of |x| (non-negative first).
std::optional<Rep3> represent_first(const TernaryForm& form, i64 N, const RepPredicate& accept = {});

class BoundExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr i64 kDefaultEnumerationBound = 100'000'000;

/// Every integer triple with form value N, canonical order. Throws BoundExceeded for N > bound.
std::vector<Rep3> represent_all(const TernaryForm& form, i64 N, i64 bound = kDefaultEnumerationBound);

/// Closed form for the values of x^2 + 5y^2 + 5z^2: N is represented iff
/// N is not +-2 mod 5 and N is not of the shape 4^k(8l+7).
bool in_Q_h(i64 N);

/// (z, w) with 0 <= z <= w, z^2 + w^2 == N and z minimal.
/// Enumeration below 10^6; above that, all representations are generated from
/// the factorization of N (Gaussian primes) and the least one is returned.
std::optional<std::pair<i64, i64>> two_squares(i64 N);

/// Same contract, always by direct enumeration over z. Exposed for cross-checks.
std::optional<std::pair<i64, i64>> two_squares_enumerate(i64 N);

}  // namespace fsq

namespace fsq {

/// Indicator of the values <= limit taken by the form, by direct enumeration of
/// every triple in the bounding box. Independent of represent_first; used as an oracle.
std::vector<bool> represented_values(const TernaryForm& form, i64 limit);

}  // namespace fsq
