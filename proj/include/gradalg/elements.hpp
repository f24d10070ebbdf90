#pragma once

// Finitely supported elements of a graded convolution algebra. An element
// lives in every level at once; norm(f, p) is its norm in L2(S, mu_p).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numerics.hpp"
#include "semigroups.hpp"
#include "weights.hpp"

namespace gradalg {

using Complex = std::complex<double>;

class GradedElement {
public:
  using Coeffs = std::map<SemigroupIndex, Complex>;

  explicit GradedElement(FamilyPtr algebra) : algebra_(std::move(algebra)) {}

  GradedElement(FamilyPtr algebra, const std::vector<std::pair<SemigroupIndex, Complex>>& terms)
      : algebra_(std::move(algebra)) {
    for (const auto& [x, c] : terms) {
      add_term(x, c);
    }
  }

  /// The unit delta_identity.
  static GradedElement one(FamilyPtr algebra) {
    GradedElement e(algebra);
    e.add_term(algebra->identity(), 1.0);
    return e;
  }

  static GradedElement delta(FamilyPtr algebra, const SemigroupIndex& x, Complex c = 1.0) {
    GradedElement e(std::move(algebra));
    e.add_term(x, c);
    return e;
  }

  [[nodiscard]] const FamilyPtr& algebra() const noexcept { return algebra_; }
  [[nodiscard]] const Coeffs& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] bool empty() const noexcept { return coeffs_.empty(); }
  [[nodiscard]] std::size_t support_size() const noexcept { return coeffs_.size(); }

  [[nodiscard]] Complex coeff(const SemigroupIndex& x) const {
    auto it = coeffs_.find(x);
    return it == coeffs_.end() ? Complex{} : it->second;
  }

  /// Adds c at x; an entry that becomes exactly zero is removed.
  void add_term(const SemigroupIndex& x, Complex c) {
    if (x.kind() != algebra_->semigroup) {
      throw VariantMismatch("index " + to_string(x) + " does not belong to the " +
                            std::string(to_string(algebra_->kind)) + " semigroup");
    }
    if (c == Complex{}) {
      return;
    }
    auto [it, inserted] = coeffs_.try_emplace(x, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Complex{}) {
        coeffs_.erase(it);
      }
    }
  }

  friend bool operator==(const GradedElement& a, const GradedElement& b) {
    return a.coeffs_ == b.coeffs_;
  }

private:
  FamilyPtr algebra_;
  Coeffs coeffs_;
};

inline bool same_algebra(const GradedElement& f, const GradedElement& g) {
  const auto& a = *f.algebra();
  const auto& b = *g.algebra();
  if (f.algebra() == g.algebra()) {
    return true;
  }
  return a.kind == b.kind && a.kind != AlgebraKind::Custom;
}

inline void require_same_algebra(const GradedElement& f, const GradedElement& g) {
  if (!same_algebra(f, g)) {
    throw AlgebraMismatch("elements belong to different algebras (" + std::string(to_string(f.algebra()->kind)) +
                          " vs " + std::string(to_string(g.algebra()->kind)) + ")");
  }
}

/// sqrt(sum_x |f(x)|^2 w_p(x)), accumulated in compensated extended precision.
inline double norm(const GradedElement& f, int level) {
  CompensatedSum acc;
  for (const auto& [x, c] : f.coeffs()) {
    const long double mag = std::abs(c);
    acc += mag * mag * std::exp(static_cast<long double>(f.algebra()->log_w(level, x)));
  }
  return static_cast<double>(std::sqrt(acc.value()));
}

/// (f * g)(x) = sum over compose(y, z) = x of f(y) g(z), accumulated by
/// walking all pairs of support points.
inline GradedElement convolve(const GradedElement& f, const GradedElement& g) {
  require_same_algebra(f, g);
  GradedElement out(f.algebra());
  for (const auto& [y, a] : f.coeffs()) {
    for (const auto& [z, b] : g.coeffs()) {
      out.add_term(compose(y, z), a * b);
    }
  }
  return out;
}

/// Same contract as convolve, computed from the output side: collect every
/// reachable output index, then sum f(y) g(z) over its decompositions.
inline GradedElement oracle_convolve(const GradedElement& f, const GradedElement& g) {
  require_same_algebra(f, g);
  std::set<SemigroupIndex> targets;
  for (const auto& [y, a] : f.coeffs()) {
    for (const auto& [z, b] : g.coeffs()) {
      targets.insert(compose(y, z));
    }
  }
  GradedElement out(f.algebra());
  for (const auto& x : targets) {
    Complex s{};
    for (const auto& [y, z] : decompositions(x)) {
      auto fy = f.coeffs().find(y);
      if (fy == f.coeffs().end()) {
        continue;
      }
      auto gz = g.coeffs().find(z);
      if (gz == g.coeffs().end()) {
        continue;
      }
      s += fy->second * gz->second;
    }
    out.add_term(x, s);
  }
  return out;
}

/// a f + b g with exact-zero pruning.
inline GradedElement linear_combine(Complex a, const GradedElement& f, Complex b, const GradedElement& g) {
  require_same_algebra(f, g);
  GradedElement out(f.algebra());
  for (const auto& [x, c] : f.coeffs()) {
    out.add_term(x, a * c);
  }
  for (const auto& [x, c] : g.coeffs()) {
    out.add_term(x, b * c);
  }
  return out;
}

inline GradedElement scale(Complex a, const GradedElement& f) {
  GradedElement out(f.algebra());
  for (const auto& [x, c] : f.coeffs()) {
    out.add_term(x, a * c);
  }
  return out;
}

/// Largest componentwise |f(x) - g(x)|.
inline double max_abs_diff(const GradedElement& f, const GradedElement& g) {
  double m = 0.0;
  for (const auto& [x, c] : f.coeffs()) {
    m = std::max(m, std::abs(c - g.coeff(x)));
  }
  for (const auto& [x, c] : g.coeffs()) {
    if (!f.coeffs().contains(x)) {
      m = std::max(m, std::abs(c));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Random elements. The generator output is consumed bit by bit through the
// helpers below rather than the std distributions, whose results differ
// between standard library implementations.

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = rng();
  while (v >= limit) {
    v = rng();
  }
  return v % n;
}

inline Complex uniform_disk(Rng& rng) {
  for (;;) {
    const double re = 2.0 * uniform01(rng) - 1.0;
    const double im = 2.0 * uniform01(rng) - 1.0;
    if (re * re + im * im <= 1.0) {
      return {re, im};
    }
  }
}

/// Size bounds for the index pool random supports are drawn from.
struct SamplerBounds {
  std::uint32_t max_nat = 40;      ///< Nat pool 0..max_nat
  std::uint32_t max_degree = 4;    ///< multi-index total degree
  std::uint32_t max_generator = 5; ///< generators / letters 1..max_generator
  std::uint32_t max_length = 3;    ///< word length
};

inline std::vector<SemigroupIndex> index_pool(SemigroupKind kind, const SamplerBounds& b) {
  switch (kind) {
  case SemigroupKind::Nat:
    return enumerate_nat(b.max_nat);
  case SemigroupKind::MultiIndex:
    return enumerate_multi_indices(b.max_degree, b.max_generator);
  case SemigroupKind::Word:
    return enumerate_words(b.max_length, b.max_generator);
  }
  return {};
}

/// An element with between 1 and max_support distinct indices drawn from
/// `pool`, coefficients uniform on the complex unit disk.
inline GradedElement random_element(const FamilyPtr& algebra, Rng& rng, std::size_t max_support,
                                    std::vector<SemigroupIndex> pool) {
  const std::size_t cap = std::min(max_support, pool.size());
  const std::size_t k = 1 + static_cast<std::size_t>(uniform_below(rng, cap));
  GradedElement out(algebra);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_below(rng, pool.size() - i));
    std::swap(pool[i], pool[j]);
    out.add_term(pool[i], uniform_disk(rng));
  }
  return out;
}

inline GradedElement random_element(const FamilyPtr& algebra, Rng& rng, std::size_t max_support,
                                    const SamplerBounds& bounds = {}) {
  return random_element(algebra, rng, max_support, index_pool(algebra->semigroup, bounds));
}

} // namespace gradalg
