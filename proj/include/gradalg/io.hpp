#pragma once

// JSON forms of the library's value types.

#include <string>

#include <json.hpp>

#include "calculus.hpp"
#include "elements.hpp"
#include "errors.hpp"
#include "report.hpp"
#include "weights.hpp"

namespace gradalg {

inline constexpr const char* kSchema = "gradalg/1";

inline nlohmann::json to_json(const CouplingValue& c) {
  return {{"value", c.value}, {"error_bound", c.error_bound}, {"method", std::string(to_string(c.method))}};
}

/// [{"index": "n:1", "re": 0.5, "im": 0}, ...] in index order.
inline nlohmann::json to_json(const GradedElement& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [x, c] : f.coeffs()) {
    out.push_back({{"index", to_string(x)}, {"re", c.real()}, {"im", c.imag()}});
  }
  return out;
}

inline nlohmann::json to_json(const Certificate& c) {
  return {{"p", c.p},
          {"q", c.q},
          {"coupling", to_json(c.coupling)},
          {"order", c.order},
          {"tail_bound", c.tail_bound}};
}

inline nlohmann::json to_json(const VerificationReport& r) {
  return {{"name", r.name}, {"lhs", r.lhs},   {"rhs", r.rhs},          {"budget", r.budget},
          {"pass", r.pass}, {"tight", r.tight}, {"params", r.params}};
}

/// Parses the element list form. Throws ParseError on any schema problem.
inline GradedElement element_from_json(const nlohmann::json& j, const FamilyPtr& algebra) {
  if (!j.is_array()) {
    throw ParseError("element must be a JSON array of {index, re, im}");
  }
  GradedElement out(algebra);
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("index") || !term["index"].is_string()) {
      throw ParseError("element term needs a string \"index\"");
    }
    const auto re = term.value("re", 0.0);
    const auto im = term.value("im", 0.0);
    try {
      out.add_term(parse_index(term["index"].get<std::string>()), {re, im});
    } catch (const VariantMismatch& e) {
      throw ParseError(e.what());
    }
  }
  return out;
}

} // namespace gradalg
