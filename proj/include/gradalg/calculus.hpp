#pragma once

// Functional calculus in a strong algebra: level selection, truncated power
// series with certified tails, Neumann inversion, general inversion through
// normalisation, and the spectral enclosure radius.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "elements.hpp"
#include "errors.hpp"
#include "weights.hpp"

namespace gradalg {

/// A level pair (p, q) with p > q + gap, and the numbers that certify it.
struct LevelPair {
  int p = 0;
  int q = 0;
  CouplingValue coupling;
  double norm_q = 0.0;      ///< norm(a, q)
  double contraction = 0.0; ///< (A + err) * norm(a, q)
};

/// First (p, q) = (q + gap + 1, q), q = 0, 1, ..., with p <= scan and
/// (A_{p,q} + err) * norm(a, q) < radius.
inline std::optional<LevelPair> find_level(const GradedElement& a, double radius, int scan) {
  const auto& fam = *a.algebra();
  if (scan < fam.gap + 1) {
    throw std::invalid_argument("find_level: scan must be at least gap + 1 = " + std::to_string(fam.gap + 1));
  }
  for (int q = 0; q + fam.gap + 1 <= scan; ++q) {
    const int p = q + fam.gap + 1;
    const CouplingValue A = coupling(fam, p, q);
    const double nq = norm(a, q);
    const double t = A.upper() * nq;
    if (t < radius) {
      return LevelPair{p, q, A, nq, t};
    }
  }
  return std::nullopt;
}

/// sum_n c_n z^n with radius of convergence `radius`.
///
/// `tail` returns an upper bound for sum_{n>N} |c_n| t^n (nullopt when it
/// cannot bound it for that t). A series with `degree` set has no terms past
/// that degree and needs no tail bound.
struct PowerSeriesSpec {
  std::function<Complex(std::size_t)> coefficient;
  double radius = std::numeric_limits<double>::infinity();
  std::function<std::optional<double>(std::size_t N, double t)> tail;
  std::optional<std::size_t> degree;

  /// sum z^n: |c_n| = 1, geometric tail t^{N+1}/(1-t).
  static PowerSeriesSpec geometric() {
    return {[](std::size_t) { return Complex{1.0}; }, 1.0,
            [](std::size_t N, double t) -> std::optional<double> {
              if (!(t < 1.0)) {
                return std::nullopt;
              }
              return std::pow(t, static_cast<double>(N + 1)) / (1.0 - t);
            },
            std::nullopt};
  }

  /// exp(z): sum_{n>N} t^n/n! <= t^{N+1}/(N+1)! / (1 - t/(N+2)) for t < N+2.
  static PowerSeriesSpec exponential() {
    return {[](std::size_t n) { return Complex{std::exp(-std::lgamma(static_cast<double>(n) + 1.0))}; },
            std::numeric_limits<double>::infinity(),
            [](std::size_t N, double t) -> std::optional<double> {
              const double n2 = static_cast<double>(N) + 2.0;
              if (!(t < n2)) {
                return std::nullopt;
              }
              if (t == 0.0) {
                return 0.0;
              }
              const double lead =
                  std::exp(static_cast<double>(N + 1) * std::log(t) - std::lgamma(static_cast<double>(N) + 2.0));
              return lead / (1.0 - t / n2);
            },
            std::nullopt};
  }

  /// |c_n| <= C rho^{-n}: tail C (t/rho)^{N+1} / (1 - t/rho).
  static PowerSeriesSpec with_geometric_bound(std::function<Complex(std::size_t)> c, double radius, double C,
                                              double rho) {
    return {std::move(c), radius,
            [C, rho](std::size_t N, double t) -> std::optional<double> {
              const double r = t / rho;
              if (!(r < 1.0)) {
                return std::nullopt;
              }
              return C * std::pow(r, static_cast<double>(N + 1)) / (1.0 - r);
            },
            std::nullopt};
  }

  static PowerSeriesSpec polynomial(std::vector<Complex> coeffs) {
    const std::size_t deg = coeffs.empty() ? 0 : coeffs.size() - 1;
    return {[c = std::move(coeffs)](std::size_t n) { return n < c.size() ? c[n] : Complex{}; },
            std::numeric_limits<double>::infinity(), nullptr, deg};
  }
};

/// Level pair, coupling, truncation order and a bound on the p-norm of the
/// omitted terms.
struct Certificate {
  int p = 0;
  int q = 0;
  CouplingValue coupling;
  std::size_t order = 0;
  double tail_bound = 0.0;
};

struct SeriesResult {
  GradedElement value;
  Certificate certificate;
};

struct NeumannResult {
  GradedElement value;
  Certificate certificate;
  double contraction = 0.0;        ///< t = (A + err) * norm(a, q)
  double inverse_norm_bound = 0.0; ///< ||(1-a)^{-1}||_p <= 1/(1-t)
  double distance_bound = 0.0;     ///< ||1 - (1-a)^{-1}||_p <= t/(1-t)
};

struct CalculusOptions {
  /// Maximum support size of any intermediate power; 0 means unbounded.
  std::size_t max_support = 0;
};

namespace detail {

inline void check_cap(const GradedElement& x, const CalculusOptions& opt) {
  if (opt.max_support != 0 && x.support_size() > opt.max_support) {
    throw SupportCapExceeded("power support reached " + std::to_string(x.support_size()) + " > cap " +
                             std::to_string(opt.max_support));
  }
}

} // namespace detail

/// sum_{n<=N} c_n a^n with a certificate for the omitted terms.
inline SeriesResult apply_series(const PowerSeriesSpec& s, const GradedElement& a, std::size_t N, int scan,
                                 const CalculusOptions& opt = {}) {
  const auto level = find_level(a, s.radius, scan);
  if (!level) {
    throw NoLevelError("apply_series: no level pair with A_{p,q} ||a||_q < R = " + std::to_string(s.radius) +
                       " within scan " + std::to_string(scan));
  }
  const std::size_t last = s.degree ? std::min(N, *s.degree) : N;
  double tail = 0.0;
  if (!s.degree || *s.degree > N) {
    if (!s.tail) {
      throw CertificationError("apply_series: infinite series without a coefficient magnitude bound");
    }
    const auto t = s.tail(N, level->contraction);
    if (!t) {
      throw CertificationError("apply_series: tail bound not available at t = " +
                               std::to_string(level->contraction));
    }
    tail = *t;
  }

  GradedElement sum(a.algebra());
  GradedElement power = GradedElement::one(a.algebra());
  for (std::size_t n = 0;; ++n) {
    const Complex c = s.coefficient(n);
    if (c != Complex{}) {
      sum = linear_combine(1.0, sum, c, power);
    }
    if (n == last) {
      break;
    }
    power = convolve(power, a);
    detail::check_cap(power, opt);
  }
  return {std::move(sum), Certificate{level->p, level->q, level->coupling, N, tail}};
}

/// sum_{n<=N} a^n, approximating (1 - a)^{-1} when A_{p,q} ||a||_q < 1.
inline NeumannResult neumann_invert(const GradedElement& a, std::size_t N, int scan,
                                    const CalculusOptions& opt = {}) {
  const auto level = find_level(a, 1.0, scan);
  if (!level) {
    throw NoLevelError("neumann_invert: 1 - a is not certifiably invertible within scan " + std::to_string(scan));
  }
  const double t = level->contraction;
  GradedElement sum = GradedElement::one(a.algebra());
  GradedElement power = GradedElement::one(a.algebra());
  for (std::size_t n = 1; n <= N && !a.empty(); ++n) {
    power = convolve(power, a);
    detail::check_cap(power, opt);
    sum = linear_combine(1.0, sum, 1.0, power);
  }
  const double tail = std::pow(t, static_cast<double>(N + 1)) / (1.0 - t);
  return {std::move(sum), Certificate{level->p, level->q, level->coupling, N, tail}, t, 1.0 / (1.0 - t),
          t / (1.0 - t)};
}

/// Inverse of f = c (1 - u), c = f(identity), via neumann_invert(u) / c.
/// The certificate's tail bound is scaled by 1/|c|.
inline NeumannResult invert(const GradedElement& f, std::size_t N, int scan, const CalculusOptions& opt = {}) {
  const auto& fam = *f.algebra();
  const Complex c = f.coeff(fam.identity());
  if (c == Complex{}) {
    if (fam.kind == AlgebraKind::Germs) {
      throw NotInvertible("invert: a germ with vanishing constant term is not invertible");
    }
    throw Inconclusive("invert: identity coefficient vanishes; invertibility not decided for " +
                       std::string(to_string(fam.kind)));
  }
  GradedElement u(f.algebra());
  for (const auto& [x, v] : f.coeffs()) {
    if (!x.is_identity()) {
      u.add_term(x, -v / c);
    }
  }
  NeumannResult r = [&] {
    try {
      return neumann_invert(u, N, scan, opt);
    } catch (const NoLevelError&) {
      throw Inconclusive("invert: no contracting level pair within scan " + std::to_string(scan));
    }
  }();
  const Complex inv_c = 1.0 / c;
  const double s = std::abs(inv_c);
  r.value = scale(inv_c, r.value);
  r.certificate.tail_bound *= s;
  r.inverse_norm_bound *= s;
  r.distance_bound *= s;
  return r;
}

/// min over q + gap < p <= scan of (A_{p,q} + err) * norm(a, q).
inline double spectrum_radius_bound(const GradedElement& a, int scan) {
  const auto& fam = *a.algebra();
  if (scan < fam.gap + 1) {
    throw std::invalid_argument("spectrum_radius_bound: scan must be at least gap + 1");
  }
  if (a.empty()) {
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (int q = 0; q + fam.gap + 1 <= scan; ++q) {
    const double nq = norm(a, q);
    for (int p = q + fam.gap + 1; p <= scan; ++p) {
      best = std::min(best, coupling(fam, p, q).upper() * nq);
    }
  }
  return best;
}

} // namespace gradalg
