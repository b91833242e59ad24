#include "fsq/io.hpp"

#include <sstream>

namespace fsq {

namespace {

std::string square_term(i64 v) {
    if (v < 0) return "(" + std::to_string(v) + ")^2";
    return std::to_string(v) + "^2";
}

ordered_json trace_json(const Trace& t) {
    ordered_json j;
    j["method"] = to_string(t.method);
    j["step"] = t.step;
    j["parameter"] = t.parameter;
    if (t.extended) j["extended"] = true;
    if (t.method == Method::Recursive) j["scale"] = t.scale;
    if (t.child) j["child"] = certificate_json_with_trace(*t.child);
    return j;
}

}  // namespace

ordered_json certificate_json(const Certificate& c) {
    const i64 s = c.quad.x + (c.witness.kind == WitnessKind::SquareX2Y || c.witness.kind == WitnessKind::SquareX2YOrdered ? 2 : 3) * c.quad.y;
    ordered_json j;
    j["n"] = c.n;
    j["x"] = c.quad.x;
    j["y"] = c.quad.y;
    j["z"] = c.quad.z;
    j["w"] = c.quad.w;
    j["s"] = s;
    j["kind"] = to_string(c.witness.kind);
    j["method"] = to_string(c.trace.method);
    return j;
}

ordered_json certificate_json_with_trace(const Certificate& c) {
    ordered_json j = certificate_json(c);
    j["root_or_exponent"] = c.witness.root_or_exponent;
    j["natural"] = c.natural;
    j["trace"] = trace_json(c.trace);
    return j;
}

ordered_json local_report_json(const LocalReport& r, const std::string& form_name, i64 n) {
    ordered_json j;
    j["n"] = n;
    j["form"] = form_name;
    j["prime"] = r.prime;
    j["represented"] = r.represented;
    j["modulus"] = r.modulus;
    if (r.witness) j["witness"] = {(*r.witness)(0), (*r.witness)(1), (*r.witness)(2)};
    else j["witness"] = nullptr;
    j["note"] = r.note;
    return j;
}

std::string human_line(const Certificate& c) {
    const Quad& q = c.quad;
    std::ostringstream os;
    os << c.n << " = " << square_term(q.x) << "+" << square_term(q.y) << "+" << square_term(q.z) << "+"
       << square_term(q.w) << ", ";
    switch (c.witness.kind) {
        case WitnessKind::SquareX2Y:
        case WitnessKind::SquareX2YOrdered:
            os << "x+2y = " << c.witness.value();
            break;
        default:
            os << "x+3y = " << c.witness.value();
    }
    return os.str();
}

}  // namespace fsq
