#include "fsq/local.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

namespace fsq {

namespace {

constexpr i64 kDirectSumsetLimit = 4096;

using Witnesses = std::vector<std::int32_t>;

i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(mod(static_cast<i64>(i128{a} * b % m), m)); }

// value -> least x in [0, M/2] with k*x^2 == value (mod M), -1 if unattained
Witnesses scaled_square_values(i64 k, i64 M) {
    Witnesses w(static_cast<std::size_t>(M), -1);
    i64 km = mod(k, M);
    for (i64 x = 0; x <= M / 2; ++x) {
        i64 v = mulmod(km, mulmod(x, x, M), M);
        if (w[v] < 0) w[v] = static_cast<std::int32_t>(x);
    }
    return w;
}

std::vector<i64> support(const Witnesses& w) {
    std::vector<i64> s;
    for (std::size_t v = 0; v < w.size(); ++v)
        if (w[v] >= 0) s.push_back(static_cast<i64>(v));
    return s;
}

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
    if (p == nullptr) throw std::bad_alloc();
    return FftwBuffer<T>(p);
}

// Indicator of {(a + b) mod M : a in A, b in B} via cyclic convolution.
std::vector<bool> cyclic_sumset(const Witnesses& A, const Witnesses& B, i64 M) {
    const auto n = static_cast<std::size_t>(M);
    const std::size_t nc = n / 2 + 1;
    auto real = fftw_buffer<double>(n);
    auto fa = fftw_buffer<fftw_complex>(nc);
    auto fb = fftw_buffer<fftw_complex>(nc);

    fftw_plan fwd_a, fwd_b, inv;
    {
        std::lock_guard lock(fftw_planner_mutex());
        fwd_a = fftw_plan_dft_r2c_1d(static_cast<int>(n), real.get(), fa.get(), FFTW_ESTIMATE);
        fwd_b = fftw_plan_dft_r2c_1d(static_cast<int>(n), real.get(), fb.get(), FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), fa.get(), real.get(), FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < n; ++i) real[i] = A[i] >= 0 ? 1.0 : 0.0;
    fftw_execute(fwd_a);
    for (std::size_t i = 0; i < n; ++i) real[i] = B[i] >= 0 ? 1.0 : 0.0;
    fftw_execute(fwd_b);
    for (std::size_t i = 0; i < nc; ++i) {
        double re = fa[i][0] * fb[i][0] - fa[i][1] * fb[i][1];
        double im = fa[i][0] * fb[i][1] + fa[i][1] * fb[i][0];
        fa[i][0] = re;
        fa[i][1] = im;
    }
    fftw_execute(inv);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(fwd_a);
        fftw_destroy_plan(fwd_b);
        fftw_destroy_plan(inv);
    }
    // counts are integers; unnormalized inverse scales them by n
    std::vector<bool> out(n);
    const double threshold = 0.5 * static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = real[i] > threshold;
    return out;
}

std::optional<Vec3> represents_mod_diagonal(const TernaryForm& form, i64 N, i64 M) {
    const Witnesses A = scaled_square_values(form.a, M);
    const Witnesses B = scaled_square_values(form.b, M);
    const Witnesses C = scaled_square_values(form.c, M);
    const std::vector<i64> a_vals = support(A);
    const std::vector<i64> c_vals = support(C);
    const i64 target = mod(N, M);

    auto finish = [&](i64 a, i64 c) -> std::optional<Vec3> {
        i64 b = mod(target - a - c, M);
        if (B[b] < 0) return std::nullopt;
        return Vec3(A[a], B[b], C[c]);
    };

    if (M <= kDirectSumsetLimit) {
        for (i64 c : c_vals)
            for (i64 a : a_vals)
                if (auto v = finish(a, c)) return v;
        return std::nullopt;
    }
    const std::vector<bool> ab = cyclic_sumset(A, B, M);
    for (i64 c : c_vals) {
        if (!ab[mod(target - c, M)]) continue;
        for (i64 a : a_vals)
            if (auto v = finish(a, c)) return v;
    }
    return std::nullopt;
}

std::optional<Vec3> represents_mod_general(const TernaryForm& form, i64 N, i64 M) {
    const i64 target = mod(N, M);
    // tables[L][v] = least y with b*y^2 + L*y == v (mod M)
    std::vector<Witnesses> tables(static_cast<std::size_t>(M));
    const i64 bm = mod(form.b, M);
    auto table_for = [&](i64 L) -> const Witnesses& {
        Witnesses& t = tables[L];
        if (t.empty()) {
            t.assign(static_cast<std::size_t>(M), -1);
            for (i64 y = 0; y < M; ++y) {
                i64 v = mod(mulmod(bm, mulmod(y, y, M), M) + mulmod(L, y, M), M);
                if (t[v] < 0) t[v] = static_cast<std::int32_t>(y);
            }
        }
        return t;
    };
    for (i64 x = 0; x < M; ++x) {
        for (i64 z = 0; z < M; ++z) {
            i64 base = mod(static_cast<i64>((i128{form.a} * x * x + i128{form.c} * z * z + i128{form.s} * z * x) % M), M);
            i64 L = mod(static_cast<i64>((i128{form.r} * z + i128{form.t} * x) % M), M);
            const Witnesses& t = table_for(L);
            std::int32_t y = t[mod(target - base, M)];
            if (y >= 0) return Vec3(x, y, z);
        }
    }
    return std::nullopt;
}

bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

std::optional<Vec3> represents_mod(const TernaryForm& form, i64 N, i64 M) {
    if (M < 1) throw std::invalid_argument("represents_mod: modulus must be positive");
    if (form.is_diagonal()) {
        if (M > kDiagonalModulusCap) throw CapExceeded("represents_mod: modulus above 2^24");
        return represents_mod_diagonal(form, N, M);
    }
    if (M > kGeneralModulusCap) throw CapExceeded("represents_mod: modulus above 2^12 for a non-diagonal form");
    return represents_mod_general(form, N, M);
}

LocalReport jones_2adic(const TernaryForm& form, i64 n) {
    if (n < 1) throw std::invalid_argument("jones_2adic: n must be positive");
    const int r = ord2(static_cast<u64>(n)) + 2;
    if (r + 1 >= 62) throw CapExceeded("jones_2adic: 2-adic order too large");
    LocalReport rep;
    rep.prime = 2;
    rep.modulus = i64{1} << (r + 1);
    rep.witness = represents_mod(form, n, rep.modulus);
    rep.represented = rep.witness.has_value();
    rep.note = "jones: form == n mod 2^(r+1), r = ord2(4n) = " + std::to_string(r);
    return rep;
}

bool five_adic_unit_represents_F(i64 N) {
    if (mod(N, 5) == 0) throw std::invalid_argument("five_adic_unit_represents_F: N must be a 5-adic unit");
    i64 r = mod(N, 5);
    return r == 1 || r == 4;
}

bool unimodular_all_residues(const TernaryForm& form, i64 p) {
    if (p < 3 || p > 10'000 || !is_prime(p)) throw std::invalid_argument("unimodular_all_residues: p must be an odd prime <= 10^4");
    if (form.det_gram2() % p == 0) throw std::invalid_argument("unimodular_all_residues: p divides the determinant");
    const Mat3 g = form.gram2();
    std::vector<bool> seen(static_cast<std::size_t>(p), false);
    i64 covered = 0;
    for (i64 x = 0; x < p; ++x) {
        for (i64 y = 0; y < p; ++y) {
            for (i64 z = 0; z < p; ++z) {
                Vec3 v(x, y, z);
                Vec3 grad = g * v;
                if (mod(grad(0), p) == 0 && mod(grad(1), p) == 0 && mod(grad(2), p) == 0) continue;
                i64 val = mod(static_cast<i64>(form.value(x, y, z) % p), p);
                if (!seen[val]) {
                    seen[val] = true;
                    if (++covered == p) return true;
                }
            }
        }
    }
    return false;
}

TwoAdicUnitsFact verify_two_adic_units_fact() {
    const TernaryForm q{2, 5, 5, 0, 0, 0};
    TwoAdicUnitsFact fact;
    for (i64 x = 0; x < 8; ++x)
        for (i64 y = 0; y < 8; ++y)
            for (i64 z = 0; z < 8; ++z) {
                if (y % 2 == 0 && z % 2 == 0) continue;
                i64 v = eval(q, x, y, z) % 8;
                if (v % 2 == 0) continue;
                auto& slot = fact.witnesses[v / 2];
                if (!slot) slot = Vec3(x, y, z);
            }
    fact.holds = std::all_of(fact.witnesses.begin(), fact.witnesses.end(), [](const auto& w) { return w.has_value(); });
    return fact;
}

}  // namespace fsq
