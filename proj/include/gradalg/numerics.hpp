#pragma once

// Small numerical building blocks shared by the weight and quadrature code:
// compensated summation and certified enclosures of power sums / zeta values.

#include <cfloat>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace gradalg {

/// Neumaier (improved Kahan) summation in extended precision.
class CompensatedSum {
public:
  void add(long double x) noexcept {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(long double x) noexcept {
    add(x);
    return *this;
  }
  [[nodiscard]] long double value() const noexcept { return sum_ + comp_; }

private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

/// A closed real interval [lo, hi].
struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] double mid() const noexcept { return 0.5 * (lo + hi); }
  [[nodiscard]] double radius() const noexcept { return 0.5 * (hi - lo); }
  [[nodiscard]] bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Two-sided bound on sum_{n > N} n^{-s} for real s > 1.
///
/// n^{-s} is convex and decreasing, so the midpoint rule overestimates and the
/// trapezoid rule underestimates the tail integral:
///   int_{N+1}^inf + f(N+1)/2  <=  tail  <=  int_{N+1/2}^inf.
inline Enclosure power_sum_tail(double s, std::size_t N) {
  if (!(s > 1.0)) {
    throw std::domain_error("power_sum_tail: exponent must exceed 1");
  }
  const long double n1 = static_cast<long double>(N) + 1.0L;
  const long double nh = static_cast<long double>(N) + 0.5L;
  const long double ls = s;
  const long double lo = std::pow(n1, 1.0L - ls) / (ls - 1.0L) + 0.5L * std::pow(n1, -ls);
  const long double hi = std::pow(nh, 1.0L - ls) / (ls - 1.0L);
  // one ulp of slack each way for the pow evaluations
  return {static_cast<double>(lo * (1.0L - 4 * LDBL_EPSILON)) * (1.0 - DBL_EPSILON),
          static_cast<double>(hi * (1.0L + 4 * LDBL_EPSILON)) * (1.0 + DBL_EPSILON)};
}

/// sum_{n=1}^N n^{-s}, smallest terms first, with a rounding allowance.
inline Enclosure power_sum_head(double s, std::size_t N) {
  CompensatedSum acc;
  const long double ls = s;
  for (std::size_t n = N; n >= 1; --n) {
    acc += std::pow(static_cast<long double>(n), -ls);
  }
  const long double v = acc.value();
  const long double slack = v * (static_cast<long double>(N) + 4.0L) * LDBL_EPSILON;
  return {static_cast<double>(v - slack) * (1.0 - DBL_EPSILON),
          static_cast<double>(v + slack) * (1.0 + DBL_EPSILON)};
}

/// Certified enclosure of zeta(s) from N summed terms plus the tail bound.
inline Enclosure zeta_enclosure(double s, std::size_t N) {
  const Enclosure head = power_sum_head(s, N);
  const Enclosure tail = power_sum_tail(s, N);
  return {head.lo + tail.lo, head.hi + tail.hi};
}

/// Certified zeta(s): doubles the number of summed terms until the enclosure
/// radius is at most `tol` (or a hard cap of 2^22 terms is reached).
inline Enclosure certified_zeta(double s, double tol = 1e-12) {
  std::size_t N = 64;
  Enclosure z = zeta_enclosure(s, N);
  while (z.radius() > tol && N < (std::size_t{1} << 22)) {
    N *= 2;
    z = zeta_enclosure(s, N);
  }
  return z;
}

} // namespace gradalg
