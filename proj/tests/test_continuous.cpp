#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include <gradalg/continuous.hpp>

using namespace gradalg;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeta3 = 1.2020569031595942854;

} // namespace

TEST(Mellin, IndicatorClosedForm) {
  // int_1^2 x^{-2} dx = 1/2
  const auto r = mellin(HalfLineFunction::indicator(1.0, 2.0), -1.0, {});
  EXPECT_NEAR(r.value, 0.5, 1e-12);
  EXPECT_LE(std::fabs(r.value - 0.5), r.error + 1e-15);
}

TEST(Mellin, ConstantWithTail) {
  QuadratureSpec q;
  q.cutoff = 1e3;
  const auto r = mellin(HalfLineFunction::constant(1.0), -2.0, q);
  EXPECT_NEAR(r.value, 0.5, r.error);
  // truncation dominates: the tail x^{-2}/2 at X
  EXPECT_NEAR(r.error, 0.5e-6, 1e-9);
  EXPECT_GE(r.value + r.error, 0.5);
}

TEST(Mellin, PowerFunction) {
  // int_1^inf x^{s+k-1} dx = 1/-(s+k)
  const auto r = mellin(HalfLineFunction::power(1.5), -4.0, {1e-12, 1e5});
  EXPECT_NEAR(r.value, 1.0 / 2.5, r.error + 1e-12);
}

TEST(Mellin, FloorGivesZeta) {
  QuadratureSpec q;
  q.cutoff = 1e5;
  const SummatoryFunction floor_fn(SummatoryKind::Floor, 100001);
  const double expected[] = {kPi * kPi / 6, kZeta3, std::pow(kPi, 4) / 90};
  for (int t = 2; t <= 4; ++t) {
    const auto r = mellin(floor_fn.as_function(), -t, q);
    const double zeta = t * r.value;
    EXPECT_LE(std::fabs(zeta - expected[t - 2]), t * r.error + 1e-12) << "t=" << t;
    EXPECT_NEAR(zeta, expected[t - 2], 5e-5);
  }
}

TEST(Mellin, TotientGivesRatioOfZetas) {
  QuadratureSpec q;
  q.cutoff = 2e4;
  const SummatoryFunction phi(SummatoryKind::TotientSummatory, 20001);
  // s * int Phi(x) x^{-s-1} dx = zeta(s-1)/zeta(s)
  const double s = 4.0;
  const auto r = mellin(phi.as_function(), -s, q);
  const Enclosure d = dirichlet_series(SummatoryKind::TotientSummatory, s);
  EXPECT_NEAR(s * r.value, d.mid(), s * r.error + d.radius());
  EXPECT_NEAR(d.mid(), kZeta3 / (std::pow(kPi, 4) / 90), 1e-10);
}

TEST(Mellin, Divergence) {
  EXPECT_THROW(mellin(HalfLineFunction::constant(1.0), 0.0, {}), DivergenceError);
  const SummatoryFunction floor_fn(SummatoryKind::Floor, 100);
  EXPECT_THROW(mellin(floor_fn.as_function(), -1.0, {1e-10, 50}), DivergenceError);
  EXPECT_NO_THROW(mellin(HalfLineFunction::indicator(1, 3), 5.0, {}));
  EXPECT_THROW(mellin(HalfLineFunction::constant(1.0), -2.0, {1e-10, 1.0}), std::invalid_argument);
}

TEST(Summatory, TotientTable) {
  const SummatoryFunction phi(SummatoryKind::TotientSummatory, 12);
  const double expect[] = {0, 1, 2, 4, 6, 10, 12, 18, 22, 28, 32, 42, 46};
  for (int n = 0; n <= 12; ++n) {
    EXPECT_EQ(phi(n + 0.5), expect[n]);
  }
  EXPECT_THROW((void)phi(13.0), std::out_of_range);
  EXPECT_EQ(phi(0.3), 0.0);
}

TEST(PConvolve, ClosedForms) {
  const auto one = HalfLineFunction::constant(1.0);
  const auto id = HalfLineFunction::power(1.0);
  for (double x : {1.5, 2.0, 7.3, 100.0}) {
    EXPECT_NEAR(p_convolve(one, one, x, {}).value, std::log(x), 1e-12);
    // int_1^x (x/y) dy/y = x - 1
    EXPECT_NEAR(p_convolve(one, id, x, {}).value, x - 1.0, 1e-10);
  }
  EXPECT_EQ(p_convolve(one, one, 1.0, {}).value, 0.0);
  EXPECT_EQ(p_convolve(one, one, 0.5, {}).value, 0.0);
}

TEST(PConvolve, Symmetric) {
  const auto f = HalfLineFunction::step({1.5, 2.5, 4.0}, {1.0, -0.5, 2.0});
  const auto g = HalfLineFunction::power(0.7);
  for (double x : {1.2, 2.0, 3.7, 9.0, 20.0}) {
    const auto a = p_convolve(f, g, x, {1e-12, 1e4});
    const auto b = p_convolve(g, f, x, {1e-12, 1e4});
    EXPECT_NEAR(a.value, b.value, a.error + b.error + 1e-12) << x;
  }
}

TEST(PConvolve, IndicatorsExact) {
  const auto f = HalfLineFunction::indicator(1.0, 2.0);
  for (double x : {1.3, 2.0, 3.1, 3.99, 5.0}) {
    const double expect = x <= 2.0 ? std::log(x) : (x < 4.0 ? std::log(4.0 / x) : 0.0);
    EXPECT_NEAR(p_convolve(f, f, x, {}).value, expect, 1e-14) << x;
  }
}

TEST(PInequality, ConstantClosedForm) {
  QuadratureSpec q;
  q.cutoff = 1e4;
  const auto one = HalfLineFunction::constant(1.0);
  const auto r = verify_p_inequality(one, one, 2.0, 1.0, q);
  EXPECT_NEAR(r.lhs, 0.25, r.params["lhs_error"].get<double>() + 1e-10);
  EXPECT_NEAR(r.rhs, 0.5, r.params["rhs_error"].get<double>() + 1e-10);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.tight);
  EXPECT_EQ(r.name, "p_inequality");
}

TEST(PInequality, IndicatorsClosedForm) {
  const auto f = HalfLineFunction::indicator(1.0, 2.0);
  const auto r = verify_p_inequality(f, f, 3.0, 1.0, {});
  EXPECT_NEAR(r.lhs, 0.0344084899688919, 1e-12);
  EXPECT_NEAR(r.rhs, 0.5 * 0.5 * (1.0 - 1.0 / 8.0) / 3.0, 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(PInequality, RejectsBadLevels) {
  const auto one = HalfLineFunction::constant(1.0);
  EXPECT_THROW(verify_p_inequality(one, one, 1.0, 1.0, {}), std::invalid_argument);
  EXPECT_THROW(verify_p_inequality(one, one, 2.0, 0.0, {}), std::invalid_argument);
}

TEST(PInequality, RandomStepFunctions) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::uniform_real_distribution<double> gap(0.05, 1.5);
  auto random_step = [&] {
    std::vector<double> b;
    std::vector<double> v;
    double x = 1.0;
    const int k = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < k; ++i) {
      x += gap(rng);
      b.push_back(x);
      v.push_back(val(rng));
    }
    return HalfLineFunction::step(b, v);
  };
  const std::pair<double, double> levels[] = {{2.0, 1.0}, {3.0, 1.0}, {1.5, 0.5}, {4.0, 3.5}};
  for (const auto& [p, q] : levels) {
    for (int i = 0; i < 200; ++i) {
      const auto f = random_step();
      const auto g = random_step();
      const auto r = verify_p_inequality(f, g, p, q, {});
      EXPECT_GE(r.margin(), -r.budget) << "p=" << p << " q=" << q << " sample " << i;
      EXPECT_TRUE(r.pass);
    }
  }
}

TEST(ZetaInequality, ThreeTwo) {
  QuadratureSpec q;
  q.cutoff = 2e3;
  const auto r = verify_zeta_inequality(3.0, 2.0, q);
  EXPECT_EQ(r.name, "zeta_inequality");
  EXPECT_NEAR(r.rhs, 0.32955, 1e-5);
  EXPECT_NEAR(r.rhs, kZeta3 * kPi * kPi / 6 / 6, 1e-12);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.lhs, 0.0);
  EXPECT_LT(r.lhs + r.budget, r.rhs);
}

TEST(ZetaInequality, GridInfimum) {
  QuadratureSpec q;
  q.cutoff = 1e3;
  const std::vector<double> grid{1.5, 2.0, 2.5, 3.0};
  const auto r = verify_zeta_inequality(4.0, 2.0, q, SummatoryKind::Floor, grid);
  EXPECT_TRUE(r.pass);
  const double inf = r.params["inf_rhs"].get<double>();
  EXPECT_LE(inf, r.rhs);
  EXPECT_LE(r.lhs, inf + r.budget);
  const auto best = dirichlet_rhs_infimum(SummatoryKind::Floor, 4.0, grid);
  EXPECT_EQ(r.params["argmin_r"].get<double>(), best.r);
  for (double x : grid) {
    EXPECT_LE(best.rhs, detail::dirichlet_rhs(SummatoryKind::Floor, 4.0, x).mid());
  }
}

TEST(ZetaInequality, Totient) {
  QuadratureSpec q;
  q.cutoff = 1e3;
  const auto r = verify_zeta_inequality(4.0, 3.0, q, SummatoryKind::TotientSummatory);
  EXPECT_EQ(r.name, "totient_inequality");
  EXPECT_TRUE(r.pass);
  EXPECT_THROW(verify_zeta_inequality(4.0, 2.0, q, SummatoryKind::TotientSummatory), std::invalid_argument);
  EXPECT_THROW(verify_zeta_inequality(2.0, 3.0, q), std::invalid_argument);
}

TEST(Axb, ClosedFormsAndQuadrature) {
  for (int m = 1; m <= 3; ++m) {
    const auto c = axb_constants(m);
    EXPECT_DOUBLE_EQ(c.left, 1.0 / ((2.0 * m + 1) * m));
    EXPECT_DOUBLE_EQ(c.right, 1.0 / (2.0 * m * m));
    EXPECT_NEAR(c.left_quadrature.value, c.left, 1e-6);
    EXPECT_NEAR(c.right_quadrature.value, c.right, 1e-6);
    EXPECT_LT(c.left_quadrature.error, 1e-6);
    EXPECT_NE(c.left, c.right);
    EXPECT_LT(c.left, c.right);
  }
  EXPECT_THROW(axb_constants(0), std::invalid_argument);
}
