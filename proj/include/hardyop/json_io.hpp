#pragma once

#include <json.hpp>
#include <string>

#include "hardyop/classify.hpp"
#include "hardyop/error.hpp"
#include "hardyop/operators.hpp"
#include "hardyop/space.hpp"
#include "hardyop/weights.hpp"

namespace hardyop {

using Json = nlohmann::ordered_json;

/// Malformed input document; `where` is a field path such as "operators[2].nu"
/// or a "line L, column C" position.
class ConfigError : public Error {
public:
    ConfigError(const std::string& where, const std::string& what)
        : Error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& where);

/// {"coeffs": [[re, im], ...]} for finite degree, {"kernel_anchor": [re, im]} for
/// a unit kernel and {"kernel_multiple": {"alpha": .., "q": ..}} for a scaled one.
Json function_to_json(const EntireFunction& f);
EntireFunction function_from_json(const Json& j, const WeightSequence& w, const std::string& where);

/// {"nu": [re, im], "c": [re, im], "upsilon": <function | "one">}; an optional
/// "unvalidated": true skips the |nu| <= 1 check.
WeightedCompOp operator_from_json(const Json& j, const WeightSequence& w, const std::string& where);
Json operator_to_json(const WeightedCompOp& op);

/// {dim, exactness, entries: row-major [re, im] pairs, provenance}.
Json section_to_json(const OperatorSection& s);

Json verdict_to_json(const PropertyVerdict& v);
Json report_to_json(const ClassificationReport& r);

/// Serializes with stable key order, two-space indentation and every float
/// printed with 17 significant digits.
std::string dump(const Json& j);

/// Parses a JSON document, reporting syntax errors as "line L, column C".
Json parse_document(const std::string& text, const std::string& origin);

/// Fixed-format float text shared by JSON and CSV writers.
std::string format_double(double v);

}  // namespace hardyop
