#pragma once

#include <string>
#include <utility>

#include <json.hpp>

namespace gradalg {

/// Outcome of an inequality check lhs <= rhs with an additive error budget.
struct VerificationReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double budget = 0.0;
  bool pass = false;
  bool tight = false;
  nlohmann::json params = nlohmann::json::object();

  /// Passes iff lhs <= rhs + budget; tight iff lhs > rhs - budget.
  static VerificationReport make(std::string name, double lhs, double rhs, double budget,
                                 nlohmann::json params = nlohmann::json::object()) {
    VerificationReport r{std::move(name), lhs, rhs, budget, false, false, std::move(params)};
    r.pass = lhs <= rhs + budget;
    r.tight = lhs > rhs - budget;
    return r;
  }

  [[nodiscard]] double margin() const noexcept { return rhs - lhs; }
};

} // namespace gradalg
