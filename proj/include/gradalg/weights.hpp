#pragma once

// Level-indexed weight families w_p = d mu_p / d mu on a discrete semigroup,
// and the constants derived from them: ratio sums sum_x w_p(x)/w_q(x),
// coupling constants A_{p,q}, Hilbert-Schmidt norms of the level embeddings,
// and the submultiplicativity test that decides whether a family can carry a
// strong convolution algebra at all.

#include <cfloat>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numerics.hpp"
#include "semigroups.hpp"

namespace gradalg {

enum class AlgebraKind { Germs, Kondratiev, FreeKondratiev, SPrime, Custom };

inline std::string_view to_string(AlgebraKind k) {
  switch (k) {
  case AlgebraKind::Germs:
    return "germs";
  case AlgebraKind::Kondratiev:
    return "kondratiev";
  case AlgebraKind::FreeKondratiev:
    return "free-kondratiev";
  case AlgebraKind::SPrime:
    return "sprime";
  case AlgebraKind::Custom:
    return "custom";
  }
  return "?";
}

inline std::optional<AlgebraKind> parse_algebra_kind(std::string_view s) {
  for (auto k : {AlgebraKind::Germs, AlgebraKind::Kondratiev, AlgebraKind::FreeKondratiev, AlgebraKind::SPrime,
                 AlgebraKind::Custom}) {
    if (s == to_string(k)) {
      return k;
    }
  }
  if (s == "free" || s == "freekondratiev") {
    return AlgebraKind::FreeKondratiev;
  }
  return std::nullopt;
}

/// Natural log of w_p(x) at level p.
using LogWeight = std::function<double(int level, const SemigroupIndex& x)>;

/// A weight family together with its semigroup and level gap.
///
/// Built-in families satisfy w_p(identity) = 1, w_p > 0 and w_{p+1} <= w_p.
struct WeightFamily {
  AlgebraKind kind = AlgebraKind::Custom;
  SemigroupKind semigroup = SemigroupKind::Nat;
  int gap = 0;
  LogWeight log_weight;

  [[nodiscard]] double log_w(int level, const SemigroupIndex& x) const { return log_weight(level, x); }
  [[nodiscard]] double w(int level, const SemigroupIndex& x) const { return std::exp(log_weight(level, x)); }
  [[nodiscard]] SemigroupIndex identity() const { return SemigroupIndex::identity(semigroup); }
};

using FamilyPtr = std::shared_ptr<const WeightFamily>;

/// Germs of holomorphic functions at 0 as coefficient sequences: w_p(n) = 4^{-np}.
inline FamilyPtr germs() {
  static const FamilyPtr fam = std::make_shared<const WeightFamily>(WeightFamily{
      AlgebraKind::Germs, SemigroupKind::Nat, 0, [](int p, const SemigroupIndex& x) {
        return -static_cast<double>(x.as<Nat>().n) * p * std::log(4.0);
      }});
  return fam;
}

/// Kondratiev space over multi-indices: w_p(alpha) = prod_n (2n)^{-alpha_n p}.
inline FamilyPtr kondratiev() {
  static const FamilyPtr fam = std::make_shared<const WeightFamily>(WeightFamily{
      AlgebraKind::Kondratiev, SemigroupKind::MultiIndex, 1, [](int p, const SemigroupIndex& x) {
        double s = 0.0;
        for (const auto& [gen, exp] : x.as<MultiIndex>().entries()) {
          s -= static_cast<double>(exp) * std::log(2.0 * gen);
        }
        return s * p;
      }});
  return fam;
}

/// Non-commutative Kondratiev space over words: w_p(i_1...i_n) = prod_k (2 i_k)^{-p}.
inline FamilyPtr free_kondratiev() {
  static const FamilyPtr fam = std::make_shared<const WeightFamily>(WeightFamily{
      AlgebraKind::FreeKondratiev, SemigroupKind::Word, 1, [](int p, const SemigroupIndex& x) {
        double s = 0.0;
        for (auto l : x.as<Word>().letters) {
          s -= std::log(2.0 * l);
        }
        return s * p;
      }});
  return fam;
}

/// Tempered sequences: w_p(n) = (n+1)^{-2p}. Not submultiplicative.
inline FamilyPtr sprime() {
  static const FamilyPtr fam = std::make_shared<const WeightFamily>(WeightFamily{
      AlgebraKind::SPrime, SemigroupKind::Nat, 0, [](int p, const SemigroupIndex& x) {
        return -2.0 * p * std::log1p(static_cast<double>(x.as<Nat>().n));
      }});
  return fam;
}

inline FamilyPtr family(AlgebraKind k) {
  switch (k) {
  case AlgebraKind::Germs:
    return germs();
  case AlgebraKind::Kondratiev:
    return kondratiev();
  case AlgebraKind::FreeKondratiev:
    return free_kondratiev();
  case AlgebraKind::SPrime:
    return sprime();
  case AlgebraKind::Custom:
    break;
  }
  throw std::invalid_argument("family: custom families must be constructed explicitly");
}

// ---------------------------------------------------------------------------

enum class CouplingMethod { ClosedForm, TruncatedSumWithGeometricTail, TruncatedProductWithTail };

inline std::string_view to_string(CouplingMethod m) {
  switch (m) {
  case CouplingMethod::ClosedForm:
    return "ClosedForm";
  case CouplingMethod::TruncatedSumWithGeometricTail:
    return "TruncatedSumWithGeometricTail";
  case CouplingMethod::TruncatedProductWithTail:
    return "TruncatedProductWithTail";
  }
  return "?";
}

/// A positive constant with a rigorous bound on |reported - true|.
/// error_bound is zero exactly for closed forms.
struct CouplingValue {
  double value = 0.0;
  double error_bound = 0.0;
  CouplingMethod method = CouplingMethod::ClosedForm;

  /// value + error_bound, the number to use in certified inequalities.
  [[nodiscard]] double upper() const noexcept { return value + error_bound; }
  [[nodiscard]] double lower() const noexcept { return value - error_bound; }
};

namespace detail {

inline CouplingValue from_enclosure(Enclosure e, CouplingMethod m) {
  return {e.mid(), e.radius() + DBL_EPSILON * e.hi, m};
}

} // namespace detail

/// prod_{n<=N} (1 - (2n)^{-m})^{-1} with the remaining factors bracketed.
///
/// With x_n = (2n)^{-m} and L = sum_{n>N} -log(1 - x_n):
///   sum_{n>N} x_n  <=  L  <=  (sum_{n>N} x_n) / (1 - x_{N+1}),
/// and the power-sum tail is enclosed by power_sum_tail. The value is the
/// midpoint of the resulting enclosure of the infinite product. Enclosures
/// are nested in N, so refinement never moves the value by more than the
/// previously reported error bound.
inline CouplingValue kondratiev_ratio_sum(int m, std::size_t N) {
  if (m < 2) {
    throw DivergenceError("kondratiev: sum over multi-indices diverges for p - q < 2");
  }
  const long double lm = m;
  CompensatedSum log_head;
  for (std::size_t n = N; n >= 1; --n) {
    log_head += -std::log1p(-std::pow(2.0L * static_cast<long double>(n), -lm));
  }
  const long double head = log_head.value();
  const Enclosure tail = power_sum_tail(m, N);
  const long double scale = std::pow(2.0L, -lm);
  const long double x_next = std::pow(2.0L * (static_cast<long double>(N) + 1.0L), -lm);
  const long double log_lo = head + scale * tail.lo;
  const long double log_hi = head + scale * tail.hi / (1.0L - x_next);
  const long double slack = (static_cast<long double>(N) + 8.0L) * LDBL_EPSILON * (std::fabs(head) + 1.0L);
  Enclosure prod{static_cast<double>(std::exp(log_lo - slack)), static_cast<double>(std::exp(log_hi + slack))};
  return detail::from_enclosure(prod, CouplingMethod::TruncatedProductWithTail);
}

/// 1 / (1 - 2^{-m} zeta(m)) with zeta enclosed by N summed terms plus tail.
inline CouplingValue free_kondratiev_ratio_sum(int m, std::size_t N) {
  if (m < 2) {
    throw DivergenceError("free-kondratiev: sum over words diverges for p - q < 2");
  }
  const Enclosure z = zeta_enclosure(m, N);
  const double scale = std::ldexp(1.0, -m);
  const double s_lo = scale * z.lo;
  const double s_hi = scale * z.hi;
  if (!(s_hi < 1.0)) {
    throw DivergenceError("free-kondratiev: geometric ratio 2^{-m} zeta(m) is not below 1");
  }
  Enclosure geo{1.0 / (1.0 - s_lo), 1.0 / (1.0 - s_hi)};
  return detail::from_enclosure(geo, CouplingMethod::TruncatedSumWithGeometricTail);
}

inline constexpr double kRatioSumTolerance = 1e-10;

inline void check_levels(const WeightFamily& fam, int p, int q) {
  if (q < 0 || p <= q + fam.gap) {
    throw LevelGapError("levels (p=" + std::to_string(p) + ", q=" + std::to_string(q) + ") violate p > q + " +
                        std::to_string(fam.gap) + " for " + std::string(to_string(fam.kind)));
  }
}

namespace detail {

// Doubles N until the tolerance is met; results depend only on (kind, p - q)
// and are memoised.
inline CouplingValue refined_ratio_sum(AlgebraKind kind, int m, CouplingValue (*sum)(int, std::size_t)) {
  static std::mutex mutex;
  static std::map<std::pair<AlgebraKind, int>, CouplingValue> cache;
  {
    const std::lock_guard lock(mutex);
    if (const auto it = cache.find({kind, m}); it != cache.end()) {
      return it->second;
    }
  }
  std::size_t N = 64;
  CouplingValue v = sum(m, N);
  while (v.error_bound > kRatioSumTolerance && N < (std::size_t{1} << 22)) {
    N *= 2;
    v = sum(m, N);
  }
  const std::lock_guard lock(mutex);
  cache.emplace(std::pair{kind, m}, v);
  return v;
}

} // namespace detail

/// sum_{x in S} w_p(x) / w_q(x).
inline CouplingValue ratio_sum(const WeightFamily& fam, int p, int q) {
  check_levels(fam, p, q);
  const int m = p - q;
  switch (fam.kind) {
  case AlgebraKind::Germs:
    return {1.0 / (1.0 - std::pow(4.0, -m)), 0.0, CouplingMethod::ClosedForm};
  case AlgebraKind::Kondratiev:
    return detail::refined_ratio_sum(fam.kind, m, kondratiev_ratio_sum);
  case AlgebraKind::FreeKondratiev:
    return detail::refined_ratio_sum(fam.kind, m, free_kondratiev_ratio_sum);
  case AlgebraKind::SPrime:
    throw NotStrongAlgebra("sprime: weights (n+1)^{-2p} are not submultiplicative (witness n:1, n:1); "
                           "no coupling constant exists");
  case AlgebraKind::Custom:
    break;
  }
  throw DivergenceError("ratio_sum: no certified summation scheme for custom weight families");
}

/// A_{p,q} = sqrt(ratio_sum); the error is propagated through the square root
/// using the lower end of the ratio-sum enclosure.
inline CouplingValue coupling(const WeightFamily& fam, int p, int q) {
  const CouplingValue r = ratio_sum(fam, p, q);
  if (r.method == CouplingMethod::ClosedForm) {
    return {std::sqrt(r.value), 0.0, r.method};
  }
  const double root = std::sqrt(r.value);
  const double err = r.error_bound / (2.0 * std::sqrt(r.lower())) + DBL_EPSILON * root;
  return {root, err, r.method};
}

/// Hilbert-Schmidt norm of the embedding of level q into level p.
inline CouplingValue hs_norm(const WeightFamily& fam, int q, int p) { return coupling(fam, p, q); }

// ---------------------------------------------------------------------------

/// A pair violating w_p(xy) <= w_p(x) w_p(y).
struct Witness {
  SemigroupIndex x;
  SemigroupIndex y;
  double log_lhs = 0.0; ///< log w_p(xy)
  double log_rhs = 0.0; ///< log w_p(x) + log w_p(y)
};

/// Checks submultiplicativity on every ordered pair of `scope` (row-major in
/// the given order). Returns the first violating pair, or nullopt.
///
/// Comparisons are in log space with a relative slack of 1e-12, which absorbs
/// rounding in families where equality holds exactly.
inline std::optional<Witness> check_submultiplicative(const WeightFamily& fam, int p,
                                                      const std::vector<SemigroupIndex>& scope) {
  std::vector<double> lw;
  lw.reserve(scope.size());
  for (const auto& x : scope) {
    lw.push_back(fam.log_w(p, x));
  }
  for (std::size_t i = 0; i < scope.size(); ++i) {
    for (std::size_t j = 0; j < scope.size(); ++j) {
      const double lhs = fam.log_w(p, compose(scope[i], scope[j]));
      const double rhs = lw[i] + lw[j];
      const double slack = 1e-12 * std::max(1.0, std::fabs(lw[i]) + std::fabs(lw[j]));
      if (lhs > rhs + slack) {
        return Witness{scope[i], scope[j], lhs, rhs};
      }
    }
  }
  return std::nullopt;
}

} // namespace gradalg
