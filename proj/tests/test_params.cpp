#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "biharm/params.hpp"
#include "oracles/oracle_values.hpp"

using namespace biharm;

TEST(Coefficients, ClosedFormSolutionParameters) {
  const double beta = std::sqrt(3.0 / 8.0);
  auto c = coefficients(ParamSet{3, 7.0, 0.5, beta, std::nullopt});
  EXPECT_NEAR(c.I1, 0.0, 1e-15);
  EXPECT_NEAR(c.K1, 1.0, 1e-15);
  EXPECT_NEAR(c.K2, 7.0 / 3.0, 1e-14);
  EXPECT_NEAR(c.I2, 0.0, 1e-14);
  EXPECT_NEAR(c.L2, oracle::L2_exact_params, 1e-14);
  EXPECT_NEAR(c.p_half, 3.0, 0.0);
}

TEST(Region, QMinValues) {
  EXPECT_NEAR(q_min(0.5, 3), 3.0, 1e-14);
  EXPECT_NEAR(q_min(0.25, 4), oracle::q_min_quarter_n4, 1e-14);
  EXPECT_THROW(q_min(0.6, 3), DomainError);
  EXPECT_THROW(q_min(0.0, 3), DomainError);
}

TEST(Region, QMinIsIncreasingInAlpha) {
  for (int n : {3, 4, 8}) {
    double prev = q_min(1e-3, n);
    for (int k = 2; k <= 500; ++k) {
      const double cur = q_min(k * 1e-3, n);
      EXPECT_GT(cur, prev);
      prev = cur;
    }
  }
}

TEST(Region, BetaMaxAtClosedFormParameters) {
  EXPECT_NEAR(beta_max(0.5, 7.0, 3), std::sqrt(3.0 / 8.0), 1e-15);
  EXPECT_THROW(beta_max(0.5, 1.5, 3), DomainError);
}

TEST(Region, ReasonsListEachViolatedLine) {
  auto rep = check_admissible(ParamSet{3, 2.0, 0.6, 5.0, std::nullopt});
  EXPECT_FALSE(rep.admissible);
  ASSERT_EQ(rep.reasons.size(), 2u);
  EXPECT_EQ(rep.reasons[0], "alpha <= 1/2 violated");
  EXPECT_EQ(rep.reasons[1], "beta <= beta_max violated");
  auto low_q = check_admissible(ParamSet{3, 2.9, 0.5, 0.1, std::nullopt});
  ASSERT_EQ(low_q.reasons.size(), 1u);
  EXPECT_EQ(low_q.reasons[0], "q >= q_min violated");
}

TEST(Region, BoundaryPointsAreAdmissible) {
  auto rep = check_admissible(ParamSet{3, 7.0, 0.5, beta_max(0.5, 7.0, 3), std::nullopt});
  EXPECT_TRUE(rep.admissible);
  EXPECT_TRUE(rep.coefficient_signs_ok);
  EXPECT_EQ(rep.I1, Sign::zero);
  EXPECT_EQ(rep.I2, Sign::zero);
}

TEST(Region, AdmissibleImpliesCoefficientSignsRandomized) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(1e-6, 0.5), uq(1.0, 40.0), ut(0.0, 1.0);
  std::uniform_int_distribution<int> un(3, 12);
  int admissible = 0;
  for (int k = 0; k < 10000; ++k) {
    const int n = un(rng);
    const double a = ua(rng);
    const double q = std::max(q_min(a, n), 1.0 + 1e-9) + uq(rng) * ut(rng);
    const double b = beta_max(a, q, n) * ut(rng);
    auto rep = check_admissible(ParamSet{n, q, a, b, std::nullopt});
    ASSERT_TRUE(rep.admissible) << n << " " << q << " " << a << " " << b;
    ++admissible;
    EXPECT_TRUE(rep.coefficient_signs_ok) << n << " " << q << " " << a << " " << b;
  }
  EXPECT_EQ(admissible, 10000);
}

TEST(GammaInterval, ClosedFormParameters) {
  auto gi = gamma_interval(0.5, 7.0, 3);
  EXPECT_NEAR(gi.upper, 0.5, 1e-14);
  EXPECT_TRUE(gi.contains(0.0));
  EXPECT_TRUE(gi.contains(0.49));
  EXPECT_FALSE(gi.contains(0.5));  // boundary excluded
  EXPECT_NEAR(growth_exponent(gi.upper), 4.0, 1e-13);
}

TEST(GammaInterval, StrictInequalitiesAtUpperEnd) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ua(0.01, 0.5), uq(3.0, 20.0);
  for (int k = 0; k < 2000; ++k) {
    const double a = ua(rng), q = uq(rng);
    auto gi = gamma_interval(a, q, 3);
    if (gi.empty()) continue;
    EXPECT_TRUE(gi.contains(0.999 * gi.upper));
    EXPECT_FALSE(gi.contains(gi.upper));
  }
}

TEST(Tau, Values) {
  EXPECT_EQ(tau(7.0, 3), 4.0);
  EXPECT_NEAR(tau(3.0, 3), 3.0, 1e-14);
  EXPECT_THROW(tau(2.5, 3), DomainError);
}

TEST(ParamSet, ValidationErrors) {
  EXPECT_THROW(coefficients(ParamSet{2, 7.0, 0.1, 0.1, std::nullopt}), DomainError);
  EXPECT_THROW(coefficients(ParamSet{3, 1.0, 0.1, 0.1, std::nullopt}), DomainError);
  EXPECT_THROW(coefficients(ParamSet{3, 7.0, 0.1, 0.1, 1.0}), DomainError);
  EXPECT_THROW(growth_exponent(1.0), DomainError);
}
