#include "fsq/selftest.hpp"

#include <sstream>

#include "fsq/classswitch.hpp"
#include "fsq/decompose.hpp"

namespace fsq {

namespace {

struct Example {
    i64 n;
    Quad quad;
    ConstraintWitness witness;
    bool natural;
};

SelftestCheck check_example(const Example& e) {
    Certificate c{e.n, e.quad, e.witness, e.natural, {}};
    std::ostringstream name;
    name << "example " << e.n << " (x+3y = " << e.witness.value() << ")";
    return {name.str(), verify_certificate(c), ""};
}

SelftestCheck check_switch_identities(const NamedForms& forms) {
    i64 bad = 0;
    std::string first;
    auto note = [&](const std::string& what, const Vec3& v) {
        if (bad++ == 0) {
            std::ostringstream os;
            os << what << " at (" << v(0) << "," << v(1) << "," << v(2) << ")";
            first = os.str();
        }
    };
    for (i64 x = -20; x <= 20; ++x)
        for (i64 y = -20; y <= 20; ++y)
            for (i64 z = -20; z <= 20; ++z) {
                const Vec3 v(x, y, z);
                if (eval(forms.g, alpha(v)) != eval(forms.g, v)) note("alpha", v);
                if (auto p = phi(v)) {
                    if (eval(forms.g, *p) != eval(forms.f, v)) note("phi", v);
                    if (psi(*p) != std::optional<Vec3>(v)) note("psi(phi)", v);
                }
                if (auto q = psi(v); q && eval(forms.f, *q) != eval(forms.g, v)) note("psi", v);
            }
    return {"switch identities on [-20,20]^3", bad == 0, bad == 0 ? "" : std::to_string(bad) + " mismatches, first " + first};
}

SelftestCheck check_Q_h(const NamedForms& forms) {
    constexpr i64 kLimit = 10'000;
    const std::vector<bool> values = represented_values(forms.h, kLimit);
    i64 bad = 0, first = -1;
    for (i64 N = 0; N <= kLimit; ++N) {
        if (values[static_cast<std::size_t>(N)] != in_Q_h(N)) {
            if (first < 0) first = N;
            ++bad;
        }
    }
    return {"Q(h) closed form up to 10^4", bad == 0, bad == 0 ? "" : "first mismatch at " + std::to_string(first)};
}

SelftestCheck check_anomaly(const NamedForms& forms) {
    const bool missing = !represent_first(forms.f, 10 * 1 - 2 * 2).has_value();
    return {"10*1 - 2^2 = 6 not represented by f", missing, missing ? "" : "6 unexpectedly represented"};
}

}  // namespace

std::vector<SelftestCheck> run_selftest(const NamedForms& forms) {
    const Example examples[] = {
        {9996, {58, 14, 6, 80}, {WitnessKind::Square, 10}, true},
        {99999999, {139, 19, 6866, 7269}, {WitnessKind::Square, 14}, true},
        // printed with n = 3999999999, but the tuple's norm is 399999999
        {399999999, {2347, 18, 12671, 15295}, {WitnessKind::Square, 49}, true},
        {99997, {-98, 34, 119, 274}, {WitnessKind::PowerOf4, 1}, false},
        {99999, {-29, 10, 33, 313}, {WitnessKind::PowerOf4, 0}, false},
    };
    std::vector<SelftestCheck> out;
    for (const auto& e : examples) out.push_back(check_example(e));
    out.push_back({"determinants 100, 100, 25",
                   forms.f.det_gram2() == 800 && forms.g.det_gram2() == 800 && forms.h.det_gram2() == 200, ""});
    out.push_back(check_switch_identities(forms));
    out.push_back(check_Q_h(forms));
    out.push_back(check_anomaly(forms));
    return out;
}

}  // namespace fsq
