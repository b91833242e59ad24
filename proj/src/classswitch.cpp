#include "fsq/classswitch.hpp"

#include <algorithm>
#include <vector>

namespace fsq {

namespace {

Mat3 rows(i64 a0, i64 a1, i64 a2, i64 b0, i64 b1, i64 b2, i64 c0, i64 c1, i64 c2) {
    Mat3 m;
    m << a0, a1, a2, b0, b1, b2, c0, c1, c2;
    return m;
}

}  // namespace

std::optional<Vec3> SwitchMap::apply(const Vec3& v) const {
    Vec3 w = numerator * v;
    if (w.unaryExpr([this](i64 e) { return mod(e, denominator); }).any()) return std::nullopt;
    return Vec3(w / denominator);
}

const SwitchMap& automorph_alpha() {
    static const SwitchMap m{"automorph_alpha", rows(1, 0, 1, 0, 1, 0, 0, 0, -1), 1};
    return m;
}

const SwitchMap& iso_forward_phi() {
    static const SwitchMap m{"iso_forward_phi", rows(1, -1, -1, 0, -2, 2, 0, 2, 2), 2};
    return m;
}

const SwitchMap& iso_backward_psi() {
    static const SwitchMap m{"iso_backward_psi", rows(4, 0, 2, 0, -1, 1, 0, 1, 1), 2};
    return m;
}

Vec3 alpha(const Vec3& v) { return *automorph_alpha().apply(v); }
std::optional<Vec3> phi(const Vec3& v) { return iso_forward_phi().apply(v); }
std::optional<Vec3> psi(const Vec3& v) { return iso_backward_psi().apply(v); }

std::optional<Vec3> try_switch_to_F(const Vec3& v, int depth) {
    std::vector<Vec3> seen{v};
    std::vector<Vec3> frontier{v};
    auto flip_y = [](Vec3 u) {
        u(1) = -u(1);
        return u;
    };
    for (int level = 0;; ++level) {
        for (const Vec3& u : frontier)
            if (auto w = psi(u)) return w;
        if (level == depth) break;
        std::vector<Vec3> next;
        for (const Vec3& u : frontier) {
            for (Vec3 cand : {alpha(u), flip_y(u), Vec3(-u)}) {
                if (std::find(seen.begin(), seen.end(), cand) != seen.end()) continue;
                seen.push_back(cand);
                next.push_back(cand);
            }
        }
        if (next.empty()) break;
        frontier = std::move(next);
    }
    return std::nullopt;
}

}  // namespace fsq
