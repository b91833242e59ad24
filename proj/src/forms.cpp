#include "fsq/forms.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <limits>

namespace fsq {

namespace {

i64 narrow(i128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw std::overflow_error("form value exceeds 64 bits");
    return static_cast<i64>(v);
}

// Cofactor of gram2 at (k, k).
i64 diagonal_cofactor(const Mat3& g, int k) {
    int i = (k + 1) % 3, j = (k + 2) % 3;
    return g(i, i) * g(j, j) - g(i, j) * g(j, i);
}

// Magnitude bound for coordinate k over {v : Q(v) <= N}: v_k^2 <= 2N * cof_kk / det(gram2).
i64 coordinate_bound(const TernaryForm& form, int k, i64 N) {
    Mat3 g = form.gram2();
    i128 num = i128{2} * N * diagonal_cofactor(g, k);
    i128 det = form.det_gram2();
    return static_cast<i64>(isqrt(static_cast<u128>(num / det)));
}

// Visit (z, y) pairs in canonical order: |z| ascending, |y| ascending, then sign of z, sign of y.
// The visitor returns true to stop.
template <typename Visit>
bool for_each_zy(i64 zmax, i64 ymax, Visit&& visit) {
    for (i64 az = 0; az <= zmax; ++az)
        for (i64 ay = 0; ay <= ymax; ++ay)
            for (int zs = 0; zs < (az == 0 ? 1 : 2); ++zs)
                for (int ys = 0; ys < (ay == 0 ? 1 : 2); ++ys)
                    if (visit(ys ? -ay : ay, zs ? -az : az)) return true;
    return false;
}

// Integral x with form(x, y, z) == N, ordered by |x| with the non-negative root first.
int solve_x(const TernaryForm& form, i64 N, i64 y, i64 z, std::array<i64, 2>& out) {
    if (form.s == 0 && form.t == 0) {
        i128 rest = i128{N} - (i128{form.b} * y * y + i128{form.c} * z * z + i128{form.r} * y * z);
        if (rest < 0 || rest % form.a != 0) return 0;
        auto root = is_square(static_cast<i64>(rest / form.a));
        if (!root) return 0;
        out[0] = *root;
        if (*root == 0) return 1;
        out[1] = -*root;
        return 2;
    }
    // a x^2 + B x + C = 0
    i128 B = i128{form.s} * z + i128{form.t} * y;
    i128 C = i128{form.b} * y * y + i128{form.c} * z * z + i128{form.r} * y * z - N;
    i128 D = B * B - 4 * i128{form.a} * C;
    if (D < 0) return 0;
    u128 sd = isqrt(static_cast<u128>(D));
    if (static_cast<i128>(sd * sd) != D) return 0;
    i128 den = 2 * i128{form.a};
    int count = 0;
    std::array<i128, 2> nums = {-B + static_cast<i128>(sd), -B - static_cast<i128>(sd)};
    std::array<i64, 2> roots{};
    for (int k = 0; k < (sd == 0 ? 1 : 2); ++k) {
        if (nums[k] % den == 0) roots[count++] = static_cast<i64>(nums[k] / den);
    }
    if (count == 2) {
        auto key = [](i64 x) { return std::pair{x < 0 ? -x : x, x < 0}; };
        if (key(roots[1]) < key(roots[0])) std::swap(roots[0], roots[1]);
    }
    std::copy_n(roots.begin(), count, out.begin());
    return count;
}

template <typename Visit>
void enumerate_reps(const TernaryForm& form, i64 N, Visit&& visit) {
    if (N < 0) return;
    if (!form.is_positive_definite()) throw std::invalid_argument("form is not positive definite");
    i64 zmax = coordinate_bound(form, 2, N);
    i64 ymax = coordinate_bound(form, 1, N);
    std::array<i64, 2> xs{};
    if (form.is_diagonal()) {
        // tighter loop: |y| bounded by what is left after the z term
        for (i64 az = 0; az <= zmax; ++az) {
            i64 rz = N - form.c * az * az;
            if (rz < 0) break;
            for (i64 ay = 0;; ++ay) {
                i64 ry = rz - form.b * ay * ay;
                if (ry < 0) break;
                if (ry % form.a != 0) continue;
                auto root = is_square(ry / form.a);
                if (!root) continue;
                for (i64 z : {az, -az}) {
                    for (i64 y : {ay, -ay}) {
                        for (i64 x : {*root, -*root}) {
                            if (visit(Vec3(x, y, z))) return;
                            if (*root == 0) break;
                        }
                        if (ay == 0) break;
                    }
                    if (az == 0) break;
                }
            }
        }
        return;
    }
    for_each_zy(zmax, ymax, [&](i64 y, i64 z) {
        int k = solve_x(form, N, y, z, xs);
        for (int i = 0; i < k; ++i)
            if (visit(Vec3(xs[i], y, z))) return true;
        return false;
    });
}

// Gaussian integer (re, im).
struct Gauss {
    i64 re, im;
    Gauss operator*(const Gauss& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
};

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128{a} * b % m); }

u64 powmod(u64 base, u64 e, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

// p = a^2 + b^2 for a prime p = 1 mod 4 (Hermite-Serret descent from a root of -1).
Gauss prime_as_two_squares(u64 p) {
    u64 t = 0;
    for (u64 c = 2;; ++c) {
        if (powmod(c, (p - 1) / 2, p) == p - 1) {
            t = powmod(c, (p - 1) / 4, p);
            break;
        }
    }
    u64 r0 = p, r1 = t;
    u64 lim = isqrt(p);
    while (r1 > lim) {
        u64 tmp = r0 % r1;
        r0 = r1;
        r1 = tmp;
    }
    auto a = static_cast<i64>(r1);
    auto b = is_square(static_cast<i64>(p) - a * a);
    return {a, *b};
}

std::optional<std::pair<i64, i64>> two_squares_factor(i64 N) {
    std::vector<std::pair<u64, int>> factors;
    u64 m = static_cast<u64>(N);
    for (u64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p != 0) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (p % 4 == 3 && e % 2 != 0) return std::nullopt;
        factors.emplace_back(p, e);
    }
    if (m > 1) {
        if (m % 4 == 3) return std::nullopt;
        factors.emplace_back(m, 1);
    }
    std::vector<Gauss> reps{{1, 0}};
    for (auto [p, e] : factors) {
        std::vector<Gauss> next;
        if (p == 2) {
            Gauss g{1, 0};
            for (int i = 0; i < e; ++i) g = g * Gauss{1, 1};
            for (auto r : reps) next.push_back(r * g);
        } else if (p % 4 == 3) {
            Gauss g{1, 0};
            for (int i = 0; i < e / 2; ++i) g = g * Gauss{static_cast<i64>(p), 0};
            for (auto r : reps) next.push_back(r * g);
        } else {
            Gauss pi = prime_as_two_squares(p);
            Gauss conj{pi.re, -pi.im};
            for (int j = 0; j <= e; ++j) {
                Gauss g{1, 0};
                for (int i = 0; i < j; ++i) g = g * pi;
                for (int i = j; i < e; ++i) g = g * conj;
                for (auto r : reps) next.push_back(r * g);
            }
        }
        reps = std::move(next);
    }
    std::optional<std::pair<i64, i64>> best;
    for (auto g : reps) {
        i64 u = g.re < 0 ? -g.re : g.re;
        i64 v = g.im < 0 ? -g.im : g.im;
        std::pair<i64, i64> cand{std::min(u, v), std::max(u, v)};
        if (!best || cand < *best) best = cand;
    }
    return best;
}

}  // namespace

Mat3 TernaryForm::gram2() const {
    Mat3 m;
    m << 2 * a, t, s,  //
        t, 2 * b, r,   //
        s, r, 2 * c;
    return m;
}

i64 TernaryForm::det_gram2() const {
    Mat3 g = gram2();
    return g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0)) +
           g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
}

bool TernaryForm::is_positive_definite() const {
    Mat3 g = gram2();
    return g(0, 0) > 0 && g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) > 0 && det_gram2() > 0;
}

i64 eval(const TernaryForm& form, const Vec3& v) { return narrow(form.value(v(0), v(1), v(2))); }

i64 eval_bilinear(const TernaryForm& form, const Vec3& v) {
    Eigen::Matrix<i64, 1, 1> q = v.transpose() * form.gram2() * v;
    return q(0, 0) / 2;
}

std::optional<Rep3> represent_first(const TernaryForm& form, i64 N, const RepPredicate& accept) {
    std::optional<Rep3> found;
    enumerate_reps(form, N, [&](const Vec3& v) {
        if (accept && !accept(v)) return false;
        found = Rep3{v, form, N};
        return true;
    });
    return found;
}

std::vector<Rep3> represent_all(const TernaryForm& form, i64 N, i64 bound) {
    if (N > bound) throw BoundExceeded("represent_all: N above enumeration bound");
    std::vector<Rep3> out;
    enumerate_reps(form, N, [&](const Vec3& v) {
        out.push_back(Rep3{v, form, N});
        return false;
    });
    return out;
}

bool in_Q_h(i64 N) {
    if (N < 0) return false;
    if (N == 0) return true;
    i64 r5 = N % 5;
    if (r5 == 2 || r5 == 3) return false;
    while (N % 4 == 0) N /= 4;
    return N % 8 != 7;
}

std::optional<std::pair<i64, i64>> two_squares_enumerate(i64 N) {
    if (N < 0) return std::nullopt;
    for (i64 z = 0; 2 * z * z <= N; ++z) {
        if (auto w = is_square(N - z * z)) return std::pair{z, *w};
    }
    return std::nullopt;
}

std::optional<std::pair<i64, i64>> two_squares(i64 N) {
    if (N < 0) return std::nullopt;
    if (N < 1'000'000) return two_squares_enumerate(N);
    return two_squares_factor(N);
}

}  // namespace fsq

namespace fsq {

std::vector<bool> represented_values(const TernaryForm& form, i64 limit) {
    if (!form.is_positive_definite()) throw std::invalid_argument("form is not positive definite");
    std::vector<bool> out(static_cast<std::size_t>(limit + 1), false);
    const Mat3 g = form.gram2();
    const i128 det = form.det_gram2();
    i64 bound[3];
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        const i128 cof = g(i, i) * g(j, j) - g(i, j) * g(j, i);
        bound[k] = static_cast<i64>(isqrt(static_cast<u128>(2 * i128{limit} * cof / det)));
    }
    // diagonal forms only need the non-negative octant
    const bool octant = form.is_diagonal();
    for (i64 x = octant ? 0 : -bound[0]; x <= bound[0]; ++x)
        for (i64 y = octant ? 0 : -bound[1]; y <= bound[1]; ++y)
            for (i64 z = octant ? 0 : -bound[2]; z <= bound[2]; ++z) {
                const i128 v = form.value(x, y, z);
                if (v <= limit) out[static_cast<std::size_t>(v)] = true;
            }
    return out;
}

}  // namespace fsq
