#pragma once

// Adaptive Gauss-Kronrod integration over a list of breakpoints. The 7/15
// point rule itself comes from Boost.Math; bisection and error bookkeeping
// are done here so the returned error is an absolute estimate on the caller's
// interval.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace gradalg {

struct QuadResult {
  double value = 0.0;
  double error = 0.0; ///< absolute error estimate (quadrature + any tail bound)
};

namespace detail {

template <class F>
QuadResult gk15(F& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0;
  const double v = GK::integrate(f, a, b, 0, 0.0, &err);
  // Boost reports the non-adaptive error for the rule mapped to [-1, 1].
  return {v, err * 0.5 * (b - a)};
}

template <class F>
QuadResult adapt(F& f, double a, double b, double tol, int depth) {
  QuadResult r = gk15(f, a, b);
  // below the rounding floor bisection cannot improve the estimate
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::fabs(r.value);
  if (r.error <= std::max(tol, floor) || depth == 0 || !(b - a > 1e-14 * std::max(1.0, std::fabs(a)))) {
    return r;
  }
  const double m = 0.5 * (a + b);
  const QuadResult left = adapt(f, a, m, 0.5 * tol, depth - 1);
  const QuadResult right = adapt(f, m, b, 0.5 * tol, depth - 1);
  return {left.value + right.value, left.error + right.error};
}

} // namespace detail

/// Integrates f over [a, b] split at `breaks` (sorted, may contain points
/// outside the interval). Each piece gets an equal share of `tol`.
template <class F>
QuadResult integrate_pieces(F&& f, double a, double b, const std::vector<double>& breaks, double tol,
                            int max_depth = 30) {
  std::vector<double> pts;
  pts.reserve(breaks.size() + 2);
  pts.push_back(a);
  for (double x : breaks) {
    if (x > a && x < b) {
      pts.push_back(x);
    }
  }
  pts.push_back(b);
  const double share = tol / static_cast<double>(pts.size() - 1);
  QuadResult total;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] <= pts[i]) {
      continue;
    }
    const QuadResult r = detail::adapt(f, pts[i], pts[i + 1], share, max_depth);
    total.value += r.value;
    total.error += r.error;
  }
  return total;
}

} // namespace gradalg
