#pragma once

// Quadrature checks for the continuous instances: the multiplicative
// semigroup [1, inf) with weights x^{-(p+1)} (Mellin transforms, the two-level
// convolution inequality and its Dirichlet series consequences) and the
// coupling constants of the ax+b semigroup.
//
// All integrals over [1, inf) are taken in u = ln x, cut at a finite upper
// limit X and completed with an analytic bound for the part beyond X, derived
// from the growth envelope |f(x)| <= C x^k each function carries.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "errors.hpp"
#include "numerics.hpp"
#include "quadrature.hpp"
#include "report.hpp"

namespace gradalg {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double cutoff = 1e4; ///< upper integration limit X > 1
};

/// A real function on [1, inf) with what quadrature needs to know about it.
struct HalfLineFunction {
  std::function<double(double)> eval;
  /// Appends discontinuities in (lo, hi), ascending. Null means none.
  std::function<void(double lo, double hi, std::vector<double>& out)> jumps;
  /// Constant between consecutive jumps.
  bool piecewise_constant = false;
  /// Envelope |f(x)| <= growth_coeff * x^growth_exp on [1, inf).
  double growth_coeff = 1.0;
  double growth_exp = 0.0;
  /// f vanishes beyond this point.
  double support_end = std::numeric_limits<double>::infinity();

  double operator()(double x) const { return eval(x); }

  void jumps_in(double lo, double hi, std::vector<double>& out) const {
    if (jumps) {
      jumps(lo, hi, out);
    }
  }

  static HalfLineFunction constant(double c) {
    return {[c](double) { return c; }, nullptr, true, std::fabs(c), 0.0};
  }

  static HalfLineFunction power(double k) {
    return {[k](double x) { return std::pow(x, k); }, nullptr, false, 1.0, k};
  }

  /// Indicator of [a, b] (1 <= a < b).
  static HalfLineFunction indicator(double a, double b) {
    return {[a, b](double x) { return (x >= a && x <= b) ? 1.0 : 0.0; },
            [a, b](double lo, double hi, std::vector<double>& out) {
              for (double j : {a, b}) {
                if (j > lo && j < hi) {
                  out.push_back(j);
                }
              }
            },
            true, 1.0, 0.0, b};
  }

  /// values[i] on [breaks[i-1], breaks[i]) with breaks[-1] = 1; zero after
  /// the last break. `breaks` must be ascending and > 1.
  static HalfLineFunction step(std::vector<double> breaks, std::vector<double> values) {
    if (breaks.size() != values.size() || breaks.empty()) {
      throw std::invalid_argument("step: need one value per break");
    }
    double c = 0.0;
    for (double v : values) {
      c = std::max(c, std::fabs(v));
    }
    const double end = breaks.back();
    auto b = std::make_shared<const std::vector<double>>(std::move(breaks));
    auto v = std::make_shared<const std::vector<double>>(std::move(values));
    return {[b, v](double x) {
              const auto it = std::upper_bound(b->begin(), b->end(), x);
              return it == b->end() ? 0.0 : (*v)[static_cast<std::size_t>(it - b->begin())];
            },
            [b](double lo, double hi, std::vector<double>& out) {
              for (double j : *b) {
                if (j > lo && j < hi) {
                  out.push_back(j);
                }
              }
            },
            true, c, 0.0, end};
  }
};

namespace detail {

inline void integer_jumps(double lo, double hi, std::vector<double>& out) {
  const double first = std::floor(lo) + 1.0;
  for (double n = first; n < hi; n += 1.0) {
    out.push_back(n);
  }
}

} // namespace detail

/// f(x)^2, with the envelope squared.
inline HalfLineFunction squared(const HalfLineFunction& f) {
  HalfLineFunction g = f;
  g.eval = [e = f.eval](double x) {
    const double v = e(x);
    return v * v;
  };
  g.growth_coeff = f.growth_coeff * f.growth_coeff;
  g.growth_exp = 2.0 * f.growth_exp;
  return g;
}

/// sqrt(f(x)) for non-negative f.
inline HalfLineFunction square_root(const HalfLineFunction& f) {
  HalfLineFunction g = f;
  g.eval = [e = f.eval](double x) { return std::sqrt(std::max(0.0, e(x))); };
  g.growth_coeff = std::sqrt(f.growth_coeff);
  g.growth_exp = 0.5 * f.growth_exp;
  return g;
}

// ---------------------------------------------------------------------------

enum class SummatoryKind { Floor, TotientSummatory, Custom };

/// y -> sum_{n <= y} a_n for y >= 1, tabulated exactly up to a limit.
class SummatoryFunction {
public:
  /// Floor (a_n = 1) or the totient summatory function, tabulated to `limit`.
  SummatoryFunction(SummatoryKind kind, std::size_t limit) : kind_(kind), prefix_(limit + 1, 0.0) {
    switch (kind) {
    case SummatoryKind::Floor:
      growth_coeff_ = 1.0;
      growth_exp_ = 1.0;
      for (std::size_t n = 1; n <= limit; ++n) {
        prefix_[n] = static_cast<double>(n);
      }
      break;
    case SummatoryKind::TotientSummatory: {
      std::vector<std::uint64_t> phi(limit + 1);
      std::iota(phi.begin(), phi.end(), std::uint64_t{0});
      for (std::size_t i = 2; i <= limit; ++i) {
        if (phi[i] == i) {
          for (std::size_t j = i; j <= limit; j += i) {
            phi[j] -= phi[j] / i;
          }
        }
      }
      // sum_{n<=y} phi(n) <= y(y+1)/2 <= y^2
      growth_coeff_ = 1.0;
      growth_exp_ = 2.0;
      std::uint64_t acc = 0;
      for (std::size_t n = 1; n <= limit; ++n) {
        acc += phi[n];
        prefix_[n] = static_cast<double>(acc);
      }
      break;
    }
    case SummatoryKind::Custom:
      throw std::invalid_argument("SummatoryFunction: custom kind needs coefficients");
    }
  }

  /// Custom coefficients a_n with a caller-supplied envelope |A(y)| <= C y^k.
  SummatoryFunction(std::function<double(std::uint64_t)> a, std::size_t limit, double C, double k)
      : kind_(SummatoryKind::Custom), prefix_(limit + 1, 0.0), growth_coeff_(C), growth_exp_(k) {
    CompensatedSum acc;
    for (std::size_t n = 1; n <= limit; ++n) {
      acc += a(n);
      prefix_[n] = static_cast<double>(acc.value());
    }
  }

  [[nodiscard]] SummatoryKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t limit() const noexcept { return prefix_.size() - 1; }

  [[nodiscard]] double operator()(double y) const {
    if (y < 1.0) {
      return 0.0;
    }
    const auto n = static_cast<std::size_t>(std::floor(y));
    if (n >= prefix_.size()) {
      throw std::out_of_range("SummatoryFunction: argument beyond tabulated limit");
    }
    return prefix_[n];
  }

  [[nodiscard]] HalfLineFunction as_function() const {
    auto self = std::make_shared<const SummatoryFunction>(*this);
    return {[self](double y) { return (*self)(y); }, detail::integer_jumps, true, growth_coeff_, growth_exp_};
  }

private:
  SummatoryKind kind_;
  std::vector<double> prefix_;
  double growth_coeff_ = 1.0;
  double growth_exp_ = 1.0;
};

// ---------------------------------------------------------------------------

/// One-sided Mellin transform int_1^inf x^s f(x) dx/x.
///
/// The reported error adds the quadrature estimate on [1, X] and the bound
/// C X^{s+k} / -(s+k) for the part beyond X.
inline QuadResult mellin(const HalfLineFunction& f, double s, const QuadratureSpec& quad) {
  if (!(quad.cutoff > 1.0) || !(quad.abs_tol > 0.0)) {
    throw std::invalid_argument("mellin: need cutoff > 1 and abs_tol > 0");
  }
  const bool compact = f.support_end <= quad.cutoff;
  const double X = compact ? f.support_end : quad.cutoff;
  double tail = 0.0;
  if (!compact) {
    const double e = s + f.growth_exp;
    if (!(e < 0.0)) {
      throw DivergenceError("mellin: integrand x^{s-1} f(x) is not integrable at infinity for s = " +
                            std::to_string(s));
    }
    tail = f.growth_coeff * std::pow(X, e) / (-e);
  }
  std::vector<double> j;
  f.jumps_in(1.0, X, j);
  std::vector<double> breaks;
  breaks.reserve(j.size());
  for (double x : j) {
    breaks.push_back(std::log(x));
  }
  const QuadResult r = integrate_pieces([&](double u) { return std::exp(s * u) * f(std::exp(u)); }, 0.0, std::log(X),
                                        breaks, quad.abs_tol);
  return {r.value, r.error + tail};
}

/// (f * g)(x) = int_1^x f(y) g(x/y) dy/y.
///
/// The integration range is split where f(y) or g(x/y) jumps. When both
/// functions are piecewise constant each piece is integrated exactly.
inline QuadResult p_convolve(const HalfLineFunction& f, const HalfLineFunction& g, double x,
                             const QuadratureSpec& quad) {
  if (!(x > 1.0)) {
    return {0.0, 0.0};
  }
  const double lx = std::log(x);
  std::vector<double> jf;
  std::vector<double> jg;
  f.jumps_in(1.0, x, jf);
  g.jumps_in(1.0, x, jg);
  std::vector<double> breaks;
  breaks.reserve(jf.size() + jg.size() + 2);
  for (double y : jf) {
    breaks.push_back(std::log(y));
  }
  const auto mid = static_cast<std::ptrdiff_t>(breaks.size());
  for (auto it = jg.rbegin(); it != jg.rend(); ++it) {
    breaks.push_back(lx - std::log(*it));
  }
  std::inplace_merge(breaks.begin(), breaks.begin() + mid, breaks.end());

  auto integrand = [&](double u) { return f(std::exp(u)) * g(std::exp(lx - u)); };
  if (f.piecewise_constant && g.piecewise_constant) {
    CompensatedSum acc;
    double prev = 0.0;
    auto piece = [&](double hi) {
      if (hi > prev) {
        acc += integrand(0.5 * (prev + hi)) * (hi - prev);
        prev = hi;
      }
    };
    for (double b : breaks) {
      if (b > 0.0 && b < lx) {
        piece(b);
      }
    }
    piece(lx);
    const double v = static_cast<double>(acc.value());
    return {v, 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(v) *
                   static_cast<double>(breaks.size() + 1)};
  }
  return integrate_pieces(integrand, 0.0, lx, breaks, quad.abs_tol);
}

namespace detail {

/// int_X^inf x^{-a-1} (ln x)^2 dx for a > 0.
inline double log_squared_tail(double X, double a) {
  const double L = std::log(X);
  return std::pow(X, -a) * (L * L / a + 2.0 * L / (a * a) + 2.0 / (a * a * a));
}

/// Products y*z in (1, X) with y, z drawn from {1} + jump sets, sorted, unique.
inline std::vector<double> jump_products(const HalfLineFunction& f, const HalfLineFunction& g, double X) {
  std::vector<double> jf{1.0};
  std::vector<double> jg{1.0};
  f.jumps_in(1.0, X, jf);
  g.jumps_in(1.0, X, jg);
  std::vector<double> out;
  for (double a : jf) {
    for (double b : jg) {
      const double p = a * b;
      if (p >= X) {
        break;
      }
      if (p > 1.0) {
        out.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, a); }),
            out.end());
  return out;
}

} // namespace detail

/// int_1^inf ((f*g)(x))^2 x^{-(p+1)} dx.
///
/// Beyond X the envelope |f*g| <= C_f C_g x^K ln x, K = max(k_f, k_g), gives
/// the tail bound; errors of the inner convolutions are folded into the total.
inline QuadResult convolution_square_moment(const HalfLineFunction& f, const HalfLineFunction& g, double p,
                                            const QuadratureSpec& quad) {
  const double support = f.support_end * g.support_end;
  const bool compact = support <= quad.cutoff;
  const double X = compact ? support : quad.cutoff;
  double tail = 0.0;
  if (!compact) {
    const double K = std::max(f.growth_exp, g.growth_exp);
    const double a = p - 2.0 * K;
    if (!(a > 0.0)) {
      throw DivergenceError("convolution moment diverges: p = " + std::to_string(p) +
                            " does not exceed twice the growth exponent");
    }
    const double C = f.growth_coeff * g.growth_coeff;
    tail = C * C * detail::log_squared_tail(X, a);
  }
  std::vector<double> breaks;
  for (double b : detail::jump_products(f, g, X)) {
    breaks.push_back(std::log(b));
  }
  double max_inner_err = 0.0;
  double max_abs = 0.0;
  const QuadratureSpec inner{quad.abs_tol, quad.cutoff};
  auto integrand = [&](double u) {
    const QuadResult c = p_convolve(f, g, std::exp(u), inner);
    max_inner_err = std::max(max_inner_err, c.error);
    max_abs = std::max(max_abs, std::fabs(c.value));
    return c.value * c.value * std::exp(-p * u);
  };
  const QuadResult r = integrate_pieces(integrand, 0.0, std::log(X), breaks, quad.abs_tol);
  const double inner_budget = max_inner_err * (2.0 * max_abs + max_inner_err) / p;
  return {r.value, r.error + tail + inner_budget};
}

/// Checks
///   int (f*g)^2 x^{-(p+1)} dx <= 1/(p-q) * int f^2 x^{-(q+1)} dx * int g^2 x^{-(p+1)} dx
/// for real p > q > 0.
inline VerificationReport verify_p_inequality(const HalfLineFunction& f, const HalfLineFunction& g, double p,
                                              double q, const QuadratureSpec& quad,
                                              const std::string& name = "p_inequality") {
  if (!(q > 0.0) || !(p > q)) {
    throw std::invalid_argument("verify_p_inequality: need p > q > 0");
  }
  const QuadResult lhs = convolution_square_moment(f, g, p, quad);
  const QuadResult nf = mellin(squared(f), -q, quad);
  const QuadResult ng = mellin(squared(g), -p, quad);
  const double coupling_sq = 1.0 / (p - q);
  const double rhs = coupling_sq * nf.value * ng.value;
  const double rhs_hi = coupling_sq * (nf.value + nf.error) * (ng.value + ng.error);
  const double rhs_lo = coupling_sq * std::max(0.0, nf.value - nf.error) * std::max(0.0, ng.value - ng.error);
  const double rhs_err = std::max(rhs_hi - rhs, rhs - rhs_lo);
  nlohmann::json params{{"p", p},
                        {"q", q},
                        {"coupling_squared", coupling_sq},
                        {"lhs_error", lhs.error},
                        {"rhs_error", rhs_err},
                        {"cutoff", quad.cutoff}};
  return VerificationReport::make(name, lhs.value, rhs, lhs.error + rhs_err, std::move(params));
}

/// Enclosure of sum_n a_n n^{-s}: zeta(s) for Floor, zeta(s-1)/zeta(s) for
/// the totient summatory function.
inline Enclosure dirichlet_series(SummatoryKind kind, double s) {
  switch (kind) {
  case SummatoryKind::Floor:
    return certified_zeta(s);
  case SummatoryKind::TotientSummatory: {
    const Enclosure num = certified_zeta(s - 1.0);
    const Enclosure den = certified_zeta(s);
    return {num.lo / den.hi, num.hi / den.lo};
  }
  case SummatoryKind::Custom:
    break;
  }
  throw std::invalid_argument("dirichlet_series: no closed form for custom coefficients");
}

namespace detail {

inline double min_r(SummatoryKind kind) { return kind == SummatoryKind::TotientSummatory ? 2.0 : 1.0; }

inline Enclosure dirichlet_rhs(SummatoryKind kind, double t, double r) {
  const Enclosure dt = dirichlet_series(kind, t);
  const Enclosure dr = dirichlet_series(kind, r);
  const double k = 1.0 / (t * (t - r) * r);
  return {k * dt.lo * dr.lo, k * dt.hi * dr.hi};
}

} // namespace detail

struct RhsInfimum {
  double r = 0.0;
  double rhs = std::numeric_limits<double>::infinity();
};

/// Smallest D(t) D(r) / (t (t-r) r) over the grid points inside the valid
/// range of r.
inline RhsInfimum dirichlet_rhs_infimum(SummatoryKind kind, double t, const std::vector<double>& grid) {
  RhsInfimum best;
  for (double r : grid) {
    if (r > detail::min_r(kind) && r < t) {
      const double v = detail::dirichlet_rhs(kind, t, r).mid();
      if (v < best.rhs) {
        best = {r, v};
      }
    }
  }
  return best;
}

/// Checks
///   int_1^inf ( int_1^x sqrt(A(y) A(x/y)) dy/y )^2 dx / x^{t+1}
///     <= D(t) D(r) / (t (t-r) r)
/// for A = floor (D = zeta, 1 < r < t) or A = sum phi (D(s) = zeta(s-1)/zeta(s),
/// 2 < r < t). When `grid` is non-empty the infimum of the right-hand side over
/// it is also reported and must bound the left-hand side too.
inline VerificationReport verify_zeta_inequality(double t, double r, const QuadratureSpec& quad,
                                                 SummatoryKind kind = SummatoryKind::Floor,
                                                 const std::vector<double>& grid = {}) {
  const double lo = detail::min_r(kind);
  if (!(r > lo) || !(t > r)) {
    throw std::invalid_argument("verify_zeta_inequality: need " + std::to_string(lo) + " < r < t");
  }
  const SummatoryFunction A(kind, static_cast<std::size_t>(std::ceil(quad.cutoff)) + 1);
  const HalfLineFunction f = square_root(A.as_function());
  const QuadResult lhs = convolution_square_moment(f, f, t, quad);
  const Enclosure rhs = detail::dirichlet_rhs(kind, t, r);
  nlohmann::json params{{"t", t},
                        {"r", r},
                        {"summatory", kind == SummatoryKind::Floor ? "floor" : "totient"},
                        {"lhs_error", lhs.error},
                        {"rhs_radius", rhs.radius()},
                        {"cutoff", quad.cutoff}};
  const double budget = lhs.error + rhs.radius();
  VerificationReport rep = VerificationReport::make(
      kind == SummatoryKind::Floor ? "zeta_inequality" : "totient_inequality", lhs.value, rhs.mid(), budget,
      std::move(params));
  if (!grid.empty()) {
    const RhsInfimum inf = dirichlet_rhs_infimum(kind, t, grid);
    rep.params["inf_rhs"] = inf.rhs;
    rep.params["argmin_r"] = inf.r;
    rep.pass = rep.pass && lhs.value <= inf.rhs + budget;
  }
  return rep;
}

// ---------------------------------------------------------------------------

struct AxbConstants {
  int m = 0;
  double left = 0.0;  ///< 1 / ((2m+1) m)
  double right = 0.0; ///< 1 / (2 m^2)
  QuadResult left_quadrature;
  QuadResult right_quadrature;
};

/// Coupling integrals of the ax+b semigroup S = [1, inf) x [0, inf) at level
/// gap m, in closed form and by iterated quadrature over S.
///
/// The quadrature integrates a^{-(2m+2)} e^{-mb} (left) and a^{-(2m+1)} e^{-mb}
/// (right), the integrands whose integrals over S are the closed forms.
inline AxbConstants axb_constants(int m) {
  if (m < 1) {
    throw std::invalid_argument("axb_constants: m must be a positive integer");
  }
  const double md = m;
  AxbConstants out;
  out.m = m;
  out.left = 1.0 / ((2.0 * md + 1.0) * md);
  out.right = 1.0 / (2.0 * md * md);

  auto iterated = [md](double a_exp) {
    boost::math::quadrature::exp_sinh<double> outer_rule;
    boost::math::quadrature::exp_sinh<double> inner_rule;
    const double inf = std::numeric_limits<double>::infinity();
    double max_inner_err = 0.0;
    auto outer = [&](double b) {
      double err = 0.0;
      const double v = inner_rule.integrate([&](double a) { return std::pow(a, -a_exp) * std::exp(-md * b); }, 1.0,
                                            inf, 1e-12, &err);
      max_inner_err = std::max(max_inner_err, err);
      return v;
    };
    double err = 0.0;
    const double v = outer_rule.integrate(outer, 0.0, inf, 1e-12, &err);
    // inner errors are relative to values of at most 1, integrated against e^{-mb}
    return QuadResult{v, err + max_inner_err / md};
  };
  out.left_quadrature = iterated(2.0 * md + 2.0);
  out.right_quadrature = iterated(2.0 * md + 1.0);
  return out;
}

} // namespace gradalg
