#include "hardyop/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hardyop {

std::string format_double(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError(where, "expected a number or a [re, im] pair");
}

Json function_to_json(const EntireFunction& f) {
    if (const auto* p = f.as_polynomial()) {
        Json coeffs = Json::array();
        for (const auto& c : p->coeffs) coeffs.push_back(complex_to_json(c));
        return Json{{"coeffs", coeffs}};
    }
    if (const auto* k = f.as_kernel()) {
        if (k->scale == Complex(1.0)) return Json{{"kernel_anchor", complex_to_json(k->anchor)}};
        return Json{{"kernel_multiple", Json{{"alpha", complex_to_json(k->scale)}, {"q", complex_to_json(k->anchor)}}}};
    }
    throw InvalidArgument("generated series have no JSON form");
}

EntireFunction function_from_json(const Json& j, const WeightSequence& w, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "one") return EntireFunction::constant(1.0);
        throw ConfigError(where, "unknown function keyword '" + j.get<std::string>() + "'");
    }
    if (!j.is_object() || j.size() != 1) throw ConfigError(where, "expected one of coeffs, kernel_anchor, kernel_multiple");
    if (j.contains("coeffs")) {
        const Json& arr = j["coeffs"];
        if (!arr.is_array()) throw ConfigError(where + ".coeffs", "expected an array");
        std::vector<Complex> c;
        for (std::size_t i = 0; i < arr.size(); ++i)
            c.push_back(complex_from_json(arr[i], where + ".coeffs[" + std::to_string(i) + "]"));
        return EntireFunction::polynomial(std::move(c));
    }
    if (j.contains("kernel_anchor"))
        return EntireFunction::kernel(complex_from_json(j["kernel_anchor"], where + ".kernel_anchor"), w);
    if (j.contains("kernel_multiple")) {
        const Json& km = j["kernel_multiple"];
        if (!km.is_object() || !km.contains("alpha") || !km.contains("q"))
            throw ConfigError(where + ".kernel_multiple", "expected {\"alpha\": .., \"q\": ..}");
        return EntireFunction::kernel(complex_from_json(km["q"], where + ".kernel_multiple.q"), w,
                                      complex_from_json(km["alpha"], where + ".kernel_multiple.alpha"));
    }
    throw ConfigError(where, "expected one of coeffs, kernel_anchor, kernel_multiple");
}

WeightedCompOp operator_from_json(const Json& j, const WeightSequence& w, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where, "expected an operator object");
    for (const auto& [key, _] : j.items())
        if (key != "nu" && key != "c" && key != "upsilon" && key != "unvalidated" && key != "name")
            throw ConfigError(where + "." + key, "unknown field");
    if (!j.contains("nu")) throw ConfigError(where + ".nu", "missing field");
    Complex nu = complex_from_json(j["nu"], where + ".nu");
    Complex c = j.contains("c") ? complex_from_json(j["c"], where + ".c") : Complex(0.0);
    bool unvalidated = j.value("unvalidated", false);
    std::optional<AffineSymbol> phi;
    if (unvalidated) {
        phi = AffineSymbol::unvalidated(nu, c);
    } else {
        try {
            phi = AffineSymbol(nu, c);
        } catch (const InvalidArgument& e) {
            throw ConfigError(where + ".nu", e.what());
        }
    }
    if (!j.contains("upsilon")) return WeightedCompOp::composition(*phi);
    const Json& u = j["upsilon"];
    if (u.is_string() && u.get<std::string>() == "one") return WeightedCompOp::composition(*phi);
    EntireFunction ups = function_from_json(u, w, where + ".upsilon");
    if (const auto* k = ups.as_kernel()) return WeightedCompOp::with_kernel_multiple(k->scale, k->anchor, *phi, w);
    return WeightedCompOp::general(std::move(ups), *phi);
}

Json operator_to_json(const WeightedCompOp& op) {
    Json j;
    j["nu"] = complex_to_json(op.phi().nu());
    j["c"] = complex_to_json(op.phi().c());
    if (op.form().tag == UpsilonTag::One) {
        j["upsilon"] = "one";
    } else {
        j["upsilon"] = function_to_json(op.upsilon());
    }
    if (!op.phi().validated()) j["unvalidated"] = true;
    return j;
}

Json section_to_json(const OperatorSection& s) {
    Json j;
    j["dim"] = s.dim;
    if (s.exactness.exact()) {
        j["exactness"] = "Exact";
    } else {
        j["exactness"] = Json{{"TruncatedColumns", *s.exactness.first_inexact_column}};
    }
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < s.entries.rows(); ++r)
        for (Eigen::Index c = 0; c < s.entries.cols(); ++c) entries.push_back(complex_to_json(s.entries(r, c)));
    j["entries"] = entries;
    j["provenance"] = s.provenance;
    return j;
}

Json verdict_to_json(const PropertyVerdict& v) {
    Json j;
    j["property"] = to_string(v.property);
    if (!v.partner.empty()) j["partner"] = v.partner;
    Json sym;
    sym["truth"] = to_string(v.symbolic.truth);
    sym["form"] = v.symbolic.form;
    if (v.symbolic.zero_operator) sym["zero_operator"] = true;
    if (!v.symbolic.conditions.empty()) {
        Json conds = Json::array();
        for (const auto& c : v.symbolic.conditions) conds.push_back(Json{{"name", c.name}, {"satisfied", c.satisfied}});
        sym["conditions"] = conds;
    }
    j["symbolic"] = sym;
    Json num;
    num["residual"] = v.numeric.residual;
    num["method"] = v.numeric.method;
    if (v.numeric.dim) num["dim"] = v.numeric.dim;
    if (v.numeric.grid_points) num["grid_points"] = v.numeric.grid_points;
    if (v.numeric.advisory) num["advisory"] = *v.numeric.advisory;
    if (!v.numeric.curve.empty()) {
        Json curve = Json::array();
        for (const auto& [n, r] : v.numeric.curve) curve.push_back(Json{{"N", n}, {"residual", r}});
        num["curve"] = curve;
    }
    j["numeric"] = num;
    j["agreement"] = to_string(v.agreement);
    j["agree"] = v.agree();
    return j;
}

Json report_to_json(const ClassificationReport& r) {
    Json j;
    j["op"] = r.op;
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    Json verdicts = Json::array();
    for (const auto& v : r.verdicts) verdicts.push_back(verdict_to_json(v));
    j["verdicts"] = verdicts;
    j["tolerances"] = Json{{"tol_pass", r.tolerances.tol_pass},
                           {"tol_fail", r.tolerances.tol_fail},
                           {"eval_tol", r.tolerances.eval_tol}};
    return j;
}

namespace {

void write_string(std::ostream& os, const std::string& s) {
    // nlohmann handles escaping of a bare string value.
    os << Json(s).dump();
}

void write(std::ostream& os, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) os << ",\n";
                first = false;
                os << inner;
                write_string(os, key);
                os << ": ";
                write(os, value, indent + 1);
            }
            os << "\n" << pad << "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            bool scalar = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
            if (scalar && j.size() <= 4) {
                os << "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) os << ", ";
                    write(os, j[i], indent + 1);
                }
                os << "]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << inner;
                write(os, j[i], indent + 1);
            }
            os << "\n" << pad << "]";
            return;
        }
        case Json::value_t::number_float: {
            double v = j.get<double>();
            // JSON has no inf/nan literals
            if (!std::isfinite(v)) {
                write_string(os, format_double(v));
            } else {
                os << format_double(v);
            }
            return;
        }
        case Json::value_t::string: write_string(os, j.get<std::string>()); return;
        default: os << j.dump(); return;
    }
}

}  // namespace

std::string dump(const Json& j) {
    std::ostringstream os;
    write(os, j, 0);
    os << "\n";
    return os.str();
}

Json parse_document(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(origin + ": line " + std::to_string(line) + ", column " + std::to_string(col),
                          "JSON syntax error");
    }
}

}  // namespace hardyop
