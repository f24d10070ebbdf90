#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <gradalg/weights.hpp>

using namespace gradalg;

namespace {

constexpr double kPi = std::numbers::pi;

// Wallis: prod_{n<=N} (1 - 1/(4n^2))^{-1} increases to pi/2.
double wallis_partial(std::size_t N) {
  long double prod = 1.0L;
  for (std::size_t n = 1; n <= N; ++n) {
    const long double k = 4.0L * n * n;
    prod *= k / (k - 1.0L);
  }
  return static_cast<double>(prod);
}

// Direct lattice sum over a finite scope; a lower bound for the ratio sum.
double brute_ratio_sum(const WeightFamily& fam, int p, int q, const std::vector<SemigroupIndex>& scope) {
  long double s = 0.0L;
  for (const auto& x : scope) {
    s += std::exp(static_cast<long double>(fam.log_w(p, x) - fam.log_w(q, x)));
  }
  return static_cast<double>(s);
}

} // namespace

TEST(RatioSum, GermsClosedForm) {
  const auto r = ratio_sum(*germs(), 1, 0);
  EXPECT_EQ(r.method, CouplingMethod::ClosedForm);
  EXPECT_EQ(r.error_bound, 0.0);
  EXPECT_DOUBLE_EQ(r.value, 4.0 / 3.0);
  // geometric series oracle
  long double s = 0.0L;
  for (int n = 0; n < 80; ++n) {
    s += std::pow(4.0L, -n);
  }
  EXPECT_NEAR(r.value, static_cast<double>(s), 1e-15);
}

TEST(RatioSum, KondratievWallis) {
  const auto r = ratio_sum(*kondratiev(), 3, 1);
  EXPECT_EQ(r.method, CouplingMethod::TruncatedProductWithTail);
  EXPECT_LE(r.error_bound, 1e-8);
  EXPECT_GT(r.error_bound, 0.0);
  EXPECT_NEAR(r.value, kPi / 2, r.error_bound + 1e-15);
  // partial Wallis products approach from below
  const double w = wallis_partial(200000);
  EXPECT_LT(w, r.value);
  EXPECT_NEAR(w, r.value, 1e-5);
}

TEST(RatioSum, KondratievBruteForceLowerBound) {
  const auto fam = kondratiev();
  const auto r = ratio_sum(*fam, 3, 0);
  const double brute = brute_ratio_sum(*fam, 3, 0, enumerate_multi_indices(6, 6));
  EXPECT_LT(brute, r.value + r.error_bound);
  EXPECT_GT(brute, 0.99 * r.value);
}

TEST(RatioSum, FreeKondratievGeometric) {
  const auto r = ratio_sum(*free_kondratiev(), 2, 0);
  const double expected = 1.0 / (1.0 - kPi * kPi / 24.0);
  EXPECT_NEAR(r.value, expected, 1e-8);
  EXPECT_NEAR(r.value, 1.69847, 1e-5);
  EXPECT_LE(std::fabs(r.value - expected), r.error_bound + 1e-15);
  // words up to length 7 over letters 1..6 undercount the sum
  const double brute = brute_ratio_sum(*free_kondratiev(), 2, 0, enumerate_words(7, 6));
  EXPECT_LT(brute, r.value);
  EXPECT_GT(brute, 1.3);
}

TEST(RatioSum, ErrorsAndGaps) {
  EXPECT_THROW(ratio_sum(*germs(), 1, 1), LevelGapError);
  EXPECT_THROW(ratio_sum(*germs(), 0, 1), LevelGapError);
  EXPECT_THROW(ratio_sum(*kondratiev(), 2, 1), LevelGapError);
  EXPECT_THROW(ratio_sum(*free_kondratiev(), 1, 0), LevelGapError);
  EXPECT_THROW(ratio_sum(*sprime(), 3, 1), NotStrongAlgebra);
  WeightFamily custom{AlgebraKind::Custom, SemigroupKind::Nat, 0, [](int p, const SemigroupIndex& x) {
                        return -static_cast<double>(p * x.as<Nat>().n);
                      }};
  EXPECT_THROW(ratio_sum(custom, 2, 0), DivergenceError);
  EXPECT_THROW(kondratiev_ratio_sum(1, 100), DivergenceError);
}

TEST(RatioSum, RefinementStaysWithinPreviousBound) {
  for (int m : {2, 3, 5}) {
    CouplingValue prev = kondratiev_ratio_sum(m, 4);
    for (std::size_t N = 8; N <= 8192; N *= 2) {
      const CouplingValue next = kondratiev_ratio_sum(m, N);
      EXPECT_LE(std::fabs(next.value - prev.value), prev.error_bound) << "m=" << m << " N=" << N;
      EXPECT_LE(next.error_bound, std::max(prev.error_bound, 1e-14));
      prev = next;
    }
    CouplingValue fprev = free_kondratiev_ratio_sum(m, 4);
    for (std::size_t N = 8; N <= 8192; N *= 2) {
      const CouplingValue next = free_kondratiev_ratio_sum(m, N);
      EXPECT_LE(std::fabs(next.value - fprev.value), fprev.error_bound) << "m=" << m << " N=" << N;
      fprev = next;
    }
  }
}

TEST(RatioSum, KondratievPartialProductsIncreaseTowardValue) {
  const auto r = ratio_sum(*kondratiev(), 2, 0);
  double prev = 1.0;
  for (std::size_t N = 1; N <= 4096; N *= 2) {
    const double w = wallis_partial(N);
    EXPECT_GT(w, prev);
    EXPECT_LE(w, r.value + r.error_bound);
    prev = w;
  }
}

TEST(Coupling, Values) {
  EXPECT_NEAR(coupling(*germs(), 1, 0).value, 2.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(coupling(*germs(), 1, 0).value, 1.15470, 1e-5);
  const auto k = coupling(*kondratiev(), 3, 1);
  EXPECT_NEAR(k.value, std::sqrt(kPi / 2), k.error_bound + 1e-15);
  EXPECT_NEAR(k.value, 1.25331, 1e-5);
  EXPECT_GT(k.error_bound, 0.0);
  EXPECT_LT(k.error_bound, 1e-9);
}

TEST(Coupling, GermsDecreasesTowardOne) {
  double prev = coupling(*germs(), 1, 0).value;
  for (int p = 2; p <= 30; ++p) {
    const double v = coupling(*germs(), p, 0).value;
    EXPECT_LE(v, prev);
    EXPECT_GE(v, 1.0);
    prev = v;
  }
  EXPECT_NEAR(prev, 1.0, 1e-15);
}

TEST(Coupling, MonotoneInPForEveryFamily) {
  for (const auto& fam : {germs(), kondratiev(), free_kondratiev()}) {
    for (int q = 0; q <= 3; ++q) {
      double prev = INFINITY;
      for (int p = q + fam->gap + 1; p <= q + 12; ++p) {
        const auto c = coupling(*fam, p, q);
        EXPECT_LE(c.lower(), prev) << to_string(fam->kind) << " p=" << p << " q=" << q;
        prev = c.upper();
      }
    }
  }
}

TEST(HsNorm, Germs) {
  EXPECT_NEAR(hs_norm(*germs(), 0, 1).value, 2.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(hs_norm(*germs(), 0, 3).value, std::sqrt(64.0 / 63.0), 1e-15);
  const auto k = hs_norm(*kondratiev(), 1, 3);
  EXPECT_NEAR(k.value, std::sqrt(kPi / 2), k.error_bound + 1e-15);
}

TEST(HsNorm, EqualsSumOverOrthonormalBasisImages) {
  // ||T||_HS^2 = sum_x ||e_x^{(q)}||_p^2 with e_x^{(q)} = w_q(x)^{-1/2} delta_x
  const auto fam = germs();
  long double s = 0.0L;
  for (std::uint64_t n = 0; n < 60; ++n) {
    const SemigroupIndex x = Nat{n};
    s += std::exp(static_cast<long double>(fam->log_w(2, x) - fam->log_w(0, x)));
  }
  const auto hs = hs_norm(*fam, 0, 2);
  EXPECT_NEAR(hs.value * hs.value, static_cast<double>(s), 1e-14);
}

TEST(Submultiplicative, GermsPass) {
  for (int p : {1, 2, 5, 10}) {
    EXPECT_FALSE(check_submultiplicative(*germs(), p, enumerate_nat(50)).has_value());
  }
}

TEST(Submultiplicative, SPrimeWitness) {
  const auto w = check_submultiplicative(*sprime(), 1, enumerate_nat(5));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->x, SemigroupIndex(Nat{1}));
  EXPECT_EQ(w->y, SemigroupIndex(Nat{1}));
  EXPECT_NEAR(std::exp(w->log_lhs), 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(std::exp(w->log_rhs), 1.0 / 16.0, 1e-15);
}

TEST(Submultiplicative, MultiplicativeFamiliesPass) {
  EXPECT_FALSE(check_submultiplicative(*kondratiev(), 1, enumerate_multi_indices(3, 4)).has_value());
  EXPECT_FALSE(check_submultiplicative(*kondratiev(), 7, enumerate_multi_indices(3, 6)).has_value());
  EXPECT_FALSE(check_submultiplicative(*free_kondratiev(), 3, enumerate_words(3, 4)).has_value());
}

TEST(WeightFamily, Invariants) {
  for (const auto& fam : {germs(), kondratiev(), free_kondratiev(), sprime()}) {
    for (int p = 0; p <= 6; ++p) {
      EXPECT_EQ(fam->log_w(p, fam->identity()), 0.0);
    }
    std::vector<SemigroupIndex> pool;
    switch (fam->semigroup) {
    case SemigroupKind::Nat:
      pool = enumerate_nat(200);
      break;
    case SemigroupKind::MultiIndex:
      pool = enumerate_multi_indices(5, 8);
      break;
    case SemigroupKind::Word:
      pool = enumerate_words(4, 5);
      break;
    }
    for (const auto& x : pool) {
      for (int p = 0; p <= 6; ++p) {
        const double a = fam->log_w(p, x);
        EXPECT_TRUE(std::isfinite(a));
        EXPECT_LE(fam->log_w(p + 1, x), a);
      }
    }
  }
  // no underflow problems in log space
  EXPECT_TRUE(std::isfinite(kondratiev()->log_w(500, MultiIndex{{1000, 1000}})));
}
