#include "fsq/decompose.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "fsq/detail/linear_search.hpp"
#include "fsq/forms.hpp"

namespace fsq {

namespace {

// Above this the widened parameter scan is skipped (each miss costs a full
// enumeration of the ternary form) and failures go straight to brute force.
constexpr i64 kExtendedScanLimit = 100'000'000;

using detail::search_linear;

std::vector<i64> squares_up_to(i64 limit, i64 first_root) {
    std::vector<i64> out;
    for (i64 m = first_root; m * m <= limit; ++m) out.push_back(m * m);
    return out;
}

// x + 3y = 0 is only needed when nothing positive works (n = 8, 2 * 4^k, ...),
// so zero goes last to keep the small-n answers on positive squares.
std::vector<i64> square_targets(i64 limit) {
    std::vector<i64> out = squares_up_to(limit, 1);
    out.push_back(0);
    return out;
}

std::vector<i64> twice_squares_up_to(i64 limit) {
    std::vector<i64> out;
    for (i64 m = 0; 2 * m * m <= limit; ++m) out.push_back(2 * m * m);
    return out;
}

std::vector<i64> powers_of_4_up_to(i64 limit) {
    std::vector<i64> out;
    for (i64 p = 1; p <= limit; p *= 4) out.push_back(p);
    return out;
}

// floor(sqrt(k * n)): bound on |x + coef*y| with coef^2 + 1 = k
i64 linear_bound(i64 n, i64 k) { return static_cast<i64>(isqrt(static_cast<u128>(i128{k} * n))); }

u128 ceil_div(u128 a, u128 b) { return (a + b - 1) / b; }

struct Options {
    bool natural = true;
    bool ordered = false;  // x <= y
};

// n = x^2 + y^2 + z^2 + w^2 with x + coef*y = S, coef in {2, 3}.
// (coef^2 + 1) n - S^2 = u^2 + (coef^2 + 1)(z^2 + w^2) with u = (coef^2 + 1) y - coef*S,
// so a representation of the left side by x^2 + K y^2 + K z^2 gives y once the
// sign of u is fixed by u == -coef*S (mod K).
std::optional<Quad> construct(i64 n, i64 S, i64 coef, Options opt) {
    const i64 K = coef * coef + 1;
    const TernaryForm& form = coef == 3 ? kF : kH;
    const i128 N = i128{K} * n - square(S);
    if (N < 0 || N > std::numeric_limits<i64>::max()) return std::nullopt;
    const i64 target = mod(-coef * S, K);
    std::optional<Quad> out;
    represent_first(form, static_cast<i64>(N), [&](const Vec3& v) {
        for (i64 u : {v(0), -v(0)}) {
            if (mod(u, K) != target) continue;
            const i64 y = (u + coef * S) / K;
            const i64 x = S - coef * y;
            if (opt.natural && (x < 0 || y < 0)) continue;
            if (opt.ordered && x > y) continue;
            i64 z = std::abs(v(1)), w = std::abs(v(2));
            if (z > w) std::swap(z, w);
            out = Quad{x, y, z, w};
            return true;
        }
        return false;
    });
    return out;
}

auto split_two_squares = [](i64 rem) { return two_squares(rem); };
auto no_extra = [](i64, i64) { return true; };

Certificate make(i64 n, Quad q, ConstraintWitness w, bool natural, Trace t) {
    return Certificate{n, q, w, natural, std::move(t)};
}

Trace constructive(std::string step, i64 parameter, bool extended = false) {
    return Trace{Method::Constructive, std::move(step), parameter, extended, 1, nullptr};
}

Trace brute(std::string step, i64 parameter) { return Trace{Method::BruteForce, std::move(step), parameter, false, 1, nullptr}; }

Trace derived(std::string step, i64 parameter, i64 scale, Certificate child) {
    bool ext = child.trace.extended;
    return Trace{Method::Recursive, std::move(step), parameter, ext, scale, std::make_shared<const Certificate>(std::move(child))};
}

// Scan every parameter m in [0, hi] not already in `tried`.
template <typename Try>
std::optional<Certificate> extended_scan(i64 n, i64 hi, const std::vector<i64>& tried, i64 first, Try&& attempt) {
    if (n > kExtendedScanLimit) return std::nullopt;
    for (i64 m = first; m <= hi; ++m) {
        if (std::binary_search(tried.begin(), tried.end(), m)) continue;
        if (auto c = attempt(m)) return c;
    }
    return std::nullopt;
}

Certificate brute_square_natural(i64 n, const char* step) {
    auto targets = square_targets(linear_bound(n, 10));
    if (auto hit = search_linear(n, 3, targets, true, split_two_squares, no_extra)) {
        i64 m = static_cast<i64>(isqrt(static_cast<u64>(targets[hit->target_index])));
        return make(n, hit->quad, {WitnessKind::Square, m}, true, brute(step, m));
    }
    throw SearchExhausted(n, std::string(step) + ": interval, extended scan and brute force all failed");
}

Certificate brute_pow4_signed(i64 n, const char* step) {
    auto targets = powers_of_4_up_to(linear_bound(n, 10));
    if (auto hit = search_linear(n, 3, targets, false, split_two_squares, no_extra)) {
        i64 k = *is_power_of_4(targets[hit->target_index]);
        return make(n, hit->quad, {WitnessKind::PowerOf4, k}, false, brute(step, k));
    }
    throw SearchExhausted(n, std::string(step) + ": construction and brute force failed");
}

Certificate theorem13_unscaled(i64 n) {
    if (n % 4 == 0) {
        // n = 4n', lemma24 gives x1 + 3y1 = 2 m1^2; doubling gives (2 m1)^2
        try {
            Certificate child = lemma24(n / 4);
            const i64 m1 = child.witness.root_or_exponent;
            Quad q = child.quad.scaled(2);
            return make(n, q, {WitnessKind::Square, 2 * m1}, true, derived("theorem13/case1", m1, 2, std::move(child)));
        } catch (const SearchExhausted&) {
            return brute_square_natural(n, "theorem13/brute");
        }
    }
    const std::vector<i64> cands = choose_m(n);
    auto attempt = [&](i64 m, bool ext) -> std::optional<Certificate> {
        if (auto q = construct(n, m * m, 3, {true, false}))
            return make(n, *q, {WitnessKind::Square, m}, true, constructive("theorem13/case2", m, ext));
        return std::nullopt;
    };
    for (i64 m : cands)
        if (auto c = attempt(m, false)) return *c;
    const i64 hi = static_cast<i64>(ifourth_root_floor(static_cast<u128>(i128{10} * n)));
    if (auto c = extended_scan(n, hi, cands, 1, [&](i64 m) { return attempt(m, true); })) return *c;
    return brute_square_natural(n, "theorem13/brute");
}

}  // namespace

i64 ConstraintWitness::value() const {
    const i64 r = root_or_exponent;
    switch (kind) {
        case WitnessKind::PowerOf4:
            if (r < 0 || r > 30) throw std::out_of_range("power-of-4 exponent out of range");
            return i64{1} << (2 * r);
        case WitnessKind::TwiceSquare:
            return 2 * r * r;
        case WitnessKind::Square:
        case WitnessKind::SquareX2Y:
        case WitnessKind::SquareX2YOrdered:
            return r * r;
    }
    return 0;
}

bool verify_certificate(const Certificate& c) {
    const Quad& q = c.quad;
    if (c.n < 1 || q.norm() != c.n) return false;
    if (c.natural && !q.is_natural()) return false;
    const i64 r = c.witness.root_or_exponent;
    if (r < 0) return false;
    if (c.witness.kind == WitnessKind::PowerOf4 && r > 30) return false;
    if (r > (i64{1} << 31)) return false;
    const i128 target = c.witness.value();
    switch (c.witness.kind) {
        case WitnessKind::Square:
        case WitnessKind::PowerOf4:
        case WitnessKind::TwiceSquare:
            if (i128{q.x} + 3 * i128{q.y} != target) return false;
            break;
        case WitnessKind::SquareX2YOrdered:
            if (q.x > q.y) return false;
            [[fallthrough]];
        case WitnessKind::SquareX2Y:
            if (i128{q.x} + 2 * i128{q.y} != target) return false;
            break;
    }
    if (c.trace.child && !verify_certificate(*c.trace.child)) return false;
    return true;
}

bool uses_brute_force(const Certificate& c) {
    if (c.trace.method == Method::BruteForce) return true;
    return c.trace.child && uses_brute_force(*c.trace.child);
}

std::optional<Certificate> brute_force(i64 n, Constraint constraint, bool natural, i64 cap) {
    if (n < 1) throw std::invalid_argument("brute_force: n must be positive");
    if (n > cap) throw BoundExceeded("brute_force: n above the brute-force cap");
    const i64 limit = linear_bound(n, 10);
    const bool square_kind = constraint == Constraint::Square;
    const std::vector<i64> targets = square_kind ? square_targets(limit) : powers_of_4_up_to(limit);
    auto hit = search_linear(n, 3, targets, natural, split_two_squares, no_extra);
    if (!hit) return std::nullopt;
    const i64 s = targets[hit->target_index];
    ConstraintWitness w = square_kind ? ConstraintWitness{WitnessKind::Square, static_cast<i64>(isqrt(static_cast<u64>(s)))}
                                      : ConstraintWitness{WitnessKind::PowerOf4, *is_power_of_4(s)};
    return make(n, hit->quad, w, natural, brute("brute", w.root_or_exponent));
}

std::optional<i64> sign_normalize(i64 u, i64 modulus, i64 target) {
    const i64 t = mod(target, modulus);
    if (mod(u, modulus) == t) return u;
    if (mod(-u, modulus) == t) return -u;
    return std::nullopt;
}

std::vector<i64> choose_m(i64 n) {
    if (n < 1 || n % 4 == 0) throw std::invalid_argument("choose_m: n must be positive and not divisible by 4");
    const auto lo = static_cast<i64>(ifourth_root_ceil(static_cast<u128>(i128{9} * n)));
    const auto hi = static_cast<i64>(ifourth_root_floor(static_cast<u128>(i128{10} * n)));
    const bool three_mod_four = n % 4 == 3;
    std::vector<i64> out;
    for (i64 m = std::max<i64>(lo, 1); m <= hi; ++m) {
        if (m % 5 == 0) continue;
        if (three_mod_four ? m % 4 == 0 : m % 2 == 1) out.push_back(m);
    }
    return out;
}

std::vector<i64> lemma23_m_candidates(i64 n) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("lemma23: n must be odd and positive");
    const auto lo = static_cast<i64>(ifourth_root_ceil(ceil_div(u128(9) * static_cast<u64>(n), 2)));
    const auto hi = static_cast<i64>(ifourth_root_floor(u128(5) * static_cast<u64>(n)));
    const i64 parity = ((n - 1) / 2) % 2;
    std::vector<i64> out;
    for (i64 m = lo; m <= hi; ++m)
        if (m % 2 == parity) out.push_back(m);
    return out;
}

std::vector<i64> lemma24_m_candidates(i64 n) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("lemma24 interval: n must be odd and positive");
    const auto lo = static_cast<i64>(ifourth_root_ceil(ceil_div(u128(9) * static_cast<u64>(n), 4)));
    const auto hi = static_cast<i64>(ifourth_root_floor(u128(10) * static_cast<u64>(n) / 4));
    std::vector<i64> out;
    for (i64 m = lo; m <= hi; ++m)
        if (m % 2 == 1 && m % 5 != 0) out.push_back(m);
    return out;
}

Certificate lemma23(i64 n) {
    const std::vector<i64> cands = lemma23_m_candidates(n);
    auto attempt = [&](i64 m, bool ext) -> std::optional<Certificate> {
        if (auto q = construct(n, m * m, 2, {true, true}))
            return make(n, *q, {WitnessKind::SquareX2YOrdered, m}, true, constructive("lemma23", m, ext));
        return std::nullopt;
    };
    for (i64 m : cands)
        if (auto c = attempt(m, false)) return *c;
    const i64 hi = static_cast<i64>(ifourth_root_floor(u128(5) * static_cast<u64>(n)));
    if (auto c = extended_scan(n, hi, cands, 0, [&](i64 m) { return attempt(m, true); })) return *c;

    auto targets = squares_up_to(linear_bound(n, 5), 0);
    auto ordered = [](i64 x, i64 y) { return x <= y; };
    if (auto hit = search_linear(n, 2, targets, true, split_two_squares, ordered)) {
        i64 m = static_cast<i64>(isqrt(static_cast<u64>(targets[hit->target_index])));
        return make(n, hit->quad, {WitnessKind::SquareX2YOrdered, m}, true, brute("lemma23/brute", m));
    }
    throw SearchExhausted(n, "lemma23: interval, extended scan and brute force all failed");
}

Certificate lemma24(i64 n) {
    if (n < 1 || n % 4 == 0) throw std::invalid_argument("lemma24: n must be positive and not divisible by 4");
    if (n % 2 == 0) {
        // n = 2n': (y'-x')^2 + (y'+x')^2 + (w'-z')^2 + (z'+w')^2 = 2n', and x + 3y = 2(x' + 2y')
        try {
            Certificate child = lemma23(n / 2);
            const Quad& p = child.quad;
            const i64 m0 = child.witness.root_or_exponent;
            Quad q{p.y - p.x, p.y + p.x, p.w - p.z, p.z + p.w};
            return make(n, q, {WitnessKind::TwiceSquare, m0}, true, derived("lemma24/doubling", m0, 1, std::move(child)));
        } catch (const SearchExhausted&) {
        }
    } else {
        const std::vector<i64> cands = lemma24_m_candidates(n);
        auto attempt = [&](i64 m, bool ext) -> std::optional<Certificate> {
            if (auto q = construct(n, 2 * m * m, 3, {true, false}))
                return make(n, *q, {WitnessKind::TwiceSquare, m}, true, constructive("lemma24/odd", m, ext));
            return std::nullopt;
        };
        for (i64 m : cands)
            if (auto c = attempt(m, false)) return *c;
        const i64 hi = static_cast<i64>(ifourth_root_floor(u128(10) * static_cast<u64>(n) / 4));
        if (auto c = extended_scan(n, hi, cands, 0, [&](i64 m) { return attempt(m, true); })) return *c;
    }
    auto targets = twice_squares_up_to(linear_bound(n, 10));
    if (auto hit = search_linear(n, 3, targets, true, split_two_squares, no_extra)) {
        i64 m = static_cast<i64>(isqrt(static_cast<u64>(targets[hit->target_index] / 2)));
        return make(n, hit->quad, {WitnessKind::TwiceSquare, m}, true, brute("lemma24/brute", m));
    }
    throw SearchExhausted(n, "lemma24: construction and brute force failed");
}

Certificate theorem13(i64 n) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("theorem13: n must be in [1, 2^60]");
    // n = 16 n': four times the coordinates gives x + 3y = (2m)^2
    i64 base = n, scale = 1, root_scale = 1;
    while (base % 16 == 0) {
        base /= 16;
        scale *= 4;
        root_scale *= 2;
    }
    Certificate c = theorem13_unscaled(base);
    if (scale == 1) return c;
    const i64 m = c.witness.root_or_exponent * root_scale;
    Quad q = c.quad.scaled(scale);
    return make(n, q, {WitnessKind::Square, m}, true, derived("theorem13/scale", 0, scale, std::move(c)));
}

Certificate theorem14(i64 n) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("theorem14: n must be in [1, 2^60]");
    if (n <= 10) return brute_pow4_signed(n, "theorem14/small");
    if (n % 16 == 0) {
        Certificate child = theorem14(n / 16);
        const i64 k = child.witness.root_or_exponent + 1;
        Quad q = child.quad.scaled(4);
        return make(n, q, {WitnessKind::PowerOf4, k}, false, derived("theorem14/scale", 0, 4, std::move(child)));
    }
    const Options signed_opt{false, false};
    if (n % 4 != 0) {
        // x + 3y = eps
        const i64 eps = n % 4 == 3 ? 4 : 1;
        if (auto q = construct(n, eps, 3, signed_opt))
            return make(n, *q, {WitnessKind::PowerOf4, eps == 4 ? 1 : 0}, false, constructive("theorem14/eqA", eps));
        return brute_pow4_signed(n, "theorem14/brute");
    }
    const i64 quarter = n / 4;
    std::optional<Certificate> child;  // quarter with x + 3y = 2 m^2, m in {1, 2}
    if (quarter % 2 == 1) {
        if (auto q = construct(quarter, 2, 3, signed_opt))
            child = make(quarter, *q, {WitnessKind::TwiceSquare, 1}, false, constructive("theorem14/eqB", 2));
    } else {
        // quarter = 2 n1, x' + 2y' = eta, then doubling gives x + 3y = 2 eta
        const i64 n1 = quarter / 2;
        const i64 eta = n1 % 4 == 1 ? 4 : 1;
        const i64 root = eta == 4 ? 2 : 1;
        if (auto p = construct(n1, eta, 2, signed_opt)) {
            Certificate inner = make(n1, *p, {WitnessKind::SquareX2Y, root}, false, constructive("theorem14/eta", eta));
            Quad q{p->y - p->x, p->y + p->x, p->z - p->w, p->z + p->w};
            child = make(quarter, q, {WitnessKind::TwiceSquare, root}, false, derived("theorem14/eqC", eta, 1, std::move(inner)));
        }
    }
    if (!child) return brute_pow4_signed(n, "theorem14/brute");
    // 2 m^2 in {2, 8}; doubling the coordinates gives 4 m^2 = 4^k
    const i64 root = child->witness.root_or_exponent;
    const i64 k = root == 1 ? 1 : 2;
    Quad q = child->quad.scaled(2);
    return make(n, q, {WitnessKind::PowerOf4, k}, false, derived("theorem14/eqD", root, 2, std::move(*child)));
}

std::vector<std::pair<i64, i64>> lemma22_scan(Lemma22Case which, i64 n_bound, i64 param_bound) {
    if (n_bound > 10'000'000) throw BoundExceeded("lemma22_scan: n bound above 10^7");
    std::vector<std::pair<i64, i64>> failures;
    for (i64 n = 1; n <= n_bound; ++n) {
        const i64 r4 = n % 4;
        i64 first = 0, step = 0;
        switch (which) {
            case Lemma22Case::I:
                if (r4 != 1 && r4 != 2) continue;
                first = 1, step = 2;
                break;
            case Lemma22Case::II:
                if (r4 != 3) continue;
                first = 4, step = 4;
                break;
            case Lemma22Case::III:
                if (n % 2 == 0) continue;
                first = 2, step = 4;
                break;
        }
        i64 hi = static_cast<i64>(isqrt(static_cast<u64>(10 * n)));
        if (param_bound > 0) hi = std::min(hi, param_bound);
        for (i64 p = first; p <= hi; p += step) {
            if (p % 5 == 0) continue;
            if (!represent_first(kF, 10 * n - p * p)) failures.emplace_back(n, p);
        }
    }
    return failures;
}

const char* to_string(Method m) {
    switch (m) {
        case Method::BruteForce: return "brute";
        case Method::Constructive: return "constructive";
        case Method::Recursive: return "recursive";
    }
    return "?";
}

const char* to_string(WitnessKind k) {
    switch (k) {
        case WitnessKind::Square: return "square";
        case WitnessKind::PowerOf4: return "pow4";
        case WitnessKind::TwiceSquare: return "twice_square";
        case WitnessKind::SquareX2Y: return "square_x2y";
        case WitnessKind::SquareX2YOrdered: return "square_x2y_ordered";
    }
    return "?";
}

}  // namespace fsq
