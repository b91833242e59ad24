#pragma once

#include <string>
#include <vector>

#include "fsq/forms.hpp"

namespace fsq {

struct SelftestCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Fixed arithmetic checks: the reference example decompositions, the g/f
/// switching identities on [-20, 20]^3, the closed form for Q(h) up to 10^4,
/// and the unrepresentable value 10*1 - 2^2 = 6. The forms are a parameter so
/// a corrupted constant shows up as a named failing check.
std::vector<SelftestCheck> run_selftest(const NamedForms& forms = kForms);

}  // namespace fsq
