#pragma once

// Batch verification of the two-level convolution inequality over random
// element pairs and a grid of level pairs. Shared by the command line tool
// and the acceptance suite.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "elements.hpp"
#include "io.hpp"
#include "report.hpp"
#include "weights.hpp"

namespace gradalg {

class ConfigError : public Error {
public:
  using Error::Error;
};

struct RunConfig {
  AlgebraKind algebra = AlgebraKind::Germs;
  int q_max = 4;            ///< q ranges over 0..q_max
  int p_offset = 4;         ///< p ranges over q+gap+1..q+p_offset
  std::size_t samples = 100;
  std::uint64_t seed = 7;
  std::size_t max_support = 30;
  double rel_slack = 1e-10; ///< allowed violation relative to the right-hand side
  SamplerBounds bounds{};

  void validate() const {
    if (samples < 1) {
      throw ConfigError("samples must be at least 1");
    }
    if (q_max < 0) {
      throw ConfigError("qmax must be non-negative");
    }
    if (max_support < 1) {
      throw ConfigError("max-support must be at least 1");
    }
    if (algebra == AlgebraKind::Custom) {
      throw ConfigError("custom algebras cannot be verified from the command line");
    }
    if (!(rel_slack >= 0.0)) {
      throw ConfigError("slack must be non-negative");
    }
  }
};

struct LevelCell {
  int p;
  int q;
  CouplingValue coupling;
};

inline std::vector<LevelCell> level_grid(const WeightFamily& fam, int q_max, int p_offset) {
  std::vector<LevelCell> cells;
  for (int q = 0; q <= q_max; ++q) {
    for (int p = q + fam.gap + 1; p <= q + p_offset; ++p) {
      cells.push_back({p, q, coupling(fam, p, q)});
    }
  }
  return cells;
}

/// Both one-sided inequalities for f at level q and g at level p:
///   max(||f*g||_p, ||g*f||_p) <= (A + err) ||f||_q ||g||_p  (+ rel_slack * rhs).
inline VerificationReport check_strong_inequality(const GradedElement& f, const GradedElement& g,
                                                  const GradedElement& fg, const GradedElement& gf,
                                                  const LevelCell& cell, double rel_slack) {
  const double left = norm(fg, cell.p);
  const double right = norm(gf, cell.p);
  const double rhs = cell.coupling.upper() * norm(f, cell.q) * norm(g, cell.p);
  nlohmann::json params{{"p", cell.p},
                        {"q", cell.q},
                        {"lhs_fg", left},
                        {"lhs_gf", right},
                        {"coupling", to_json(cell.coupling)}};
  return VerificationReport::make("strong_inequality", std::max(left, right), rhs, rel_slack * rhs,
                                  std::move(params));
}

struct VerifyOutcome {
  nlohmann::json document;
  int exit_code = 0; ///< 0 all pass, 1 some check failed
};

inline VerifyOutcome run_verify(const RunConfig& cfg) {
  cfg.validate();
  const FamilyPtr fam = family(cfg.algebra);
  nlohmann::json reports = nlohmann::json::array();
  std::size_t failed = 0;

  if (cfg.algebra == AlgebraKind::SPrime) {
    // No coupling constant exists; report the pair breaking submultiplicativity.
    const int p = 1;
    const auto w = check_submultiplicative(*fam, p, enumerate_nat(5));
    VerificationReport r;
    if (w) {
      r = VerificationReport::make("submultiplicativity", std::exp(w->log_lhs), std::exp(w->log_rhs), 0.0,
                                   {{"p", p}, {"x", to_string(w->x)}, {"y", to_string(w->y)}, {"witness", true}});
    } else {
      r = VerificationReport::make("submultiplicativity", 0.0, 0.0, 0.0, {{"p", p}, {"witness", false}});
    }
    failed += r.pass ? 0 : 1;
    reports.push_back(to_json(r));
  } else {
    const auto cells = level_grid(*fam, cfg.q_max, cfg.p_offset);
    const auto pool = index_pool(fam->semigroup, cfg.bounds);
    Rng rng(cfg.seed);
    for (std::size_t s = 0; s < cfg.samples; ++s) {
      const GradedElement f = random_element(fam, rng, cfg.max_support, pool);
      const GradedElement g = random_element(fam, rng, cfg.max_support, pool);
      const GradedElement fg = convolve(f, g);
      const GradedElement gf = convolve(g, f);
      for (const auto& cell : cells) {
        VerificationReport r = check_strong_inequality(f, g, fg, gf, cell, cfg.rel_slack);
        r.params["sample"] = s;
        failed += r.pass ? 0 : 1;
        reports.push_back(to_json(r));
      }
    }
  }

  nlohmann::json doc{{"schema", kSchema},
                     {"command", "verify"},
                     {"algebra", std::string(to_string(cfg.algebra))},
                     {"seed", cfg.seed},
                     {"config",
                      {{"qmax", cfg.q_max},
                       {"p_offset", cfg.p_offset},
                       {"samples", cfg.samples},
                       {"max_support", cfg.max_support},
                       {"rel_slack", cfg.rel_slack}}},
                     {"summary", {{"total", reports.size()}, {"failed", failed}}},
                     {"reports", std::move(reports)}};
  return {std::move(doc), failed == 0 ? 0 : 1};
}

} // namespace gradalg
