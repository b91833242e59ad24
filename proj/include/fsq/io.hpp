#pragma once

// JSON encodings shared by the CLI and the sweep output.
// A certificate line has the keys n, x, y, z, w, s, kind, method in that order;
// s is the value of x + 3y (m^2 or 4^k).

#include "json.hpp"

#include <string>

#include "fsq/decompose.hpp"
#include "fsq/local.hpp"

namespace fsq {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kLibraryVersion = "1.0.0";
inline constexpr const char* kSchemaVersion = "1";

ordered_json certificate_json(const Certificate& c);
/// The same object with the full method trace attached under "trace".
ordered_json certificate_json_with_trace(const Certificate& c);
ordered_json local_report_json(const LocalReport& r, const std::string& form_name, i64 n);

/// "n = x^2+y^2+z^2+w^2, x+3y = s"
std::string human_line(const Certificate& c);

}  // namespace fsq
