#include <cmath>

#include <gtest/gtest.h>

#include "biharm/biharmonic.hpp"
#include "biharm/shooting.hpp"
#include "oracles/oracle_values.hpp"

using namespace biharm;

TEST(ExactSolution, ValuesAtOrigin) {
  auto p = exact_solution(RadialGrid(3, 10.0, 1024));
  EXPECT_NEAR(p.z[0], oracle::lap_u_at_0, 1e-14);
  EXPECT_NEAR(std::pow(p.u[0], -3.0), oracle::B_at_0, 1e-13);
  EXPECT_EQ(p.classification, Classification::positive_on_window);
  EXPECT_THROW(exact_solution(RadialGrid(4, 1.0, 64)), DomainError);
}

TEST(ExactSolution, CarriedLaplacianMatchesStencil) {
  RadialGrid g(3, 10.0, 4096);
  auto p = exact_solution(g);
  auto lap = radial_laplacian(p.u.values(), g);
  double e = 0.0;
  for (std::size_t i = 4; i + 4 < g.size(); ++i) e = std::max(e, std::abs(lap[i] - p.z[i]));
  EXPECT_LT(e, 1e-5);
}

TEST(ExactSolution, ResidualIsSecondOrder) {
  auto res = [](std::size_t N) {
    auto p = exact_solution(RadialGrid(3, 10.0, N));
    return trimmed_max_abs(residual(p).values());
  };
  const double e1 = res(2048), e2 = res(4096);
  EXPECT_LT(e2, 1e-4);
  EXPECT_NEAR(oracle::bilaplacian_plus_source_at_1, 0.0, 1e-25);
  EXPECT_GE(std::log2(e1 / e2), 1.8);
}

TEST(Shooting, ReproducesClosedForm) {
  RadialGrid g(3, 10.0, 2048);
  auto ex = exact_solution(g);
  auto sh = shoot(g, 7.0, ex.u[0], ex.z[0]);
  ASSERT_TRUE(sh.window_positive());
  ASSERT_EQ(sh.u.size(), g.size());
  for (std::size_t i = 0; i < g.size(); i += 64) {
    EXPECT_NEAR(sh.u[i] / ex.u[i], 1.0, 1e-8);
    EXPECT_NEAR(sh.z[i] / ex.z[i], 1.0, 1e-7);
  }
}

TEST(Shooting, ZeroLaplacianAtOriginIsNonConforming) {
  auto p = shoot(RadialGrid(3, 10.0, 1024), 7.0, 1.0, 0.0);
  EXPECT_FALSE(p.window_positive());
  EXPECT_TRUE(p.classification == Classification::non_conforming ||
              p.classification == Classification::touched_zero);
}

TEST(Shooting, SmallLaplacianTouchesZero) {
  auto p = shoot(RadialGrid(3, 20.0, 2048), 3.0, 1.0, 0.05);
  EXPECT_EQ(p.classification, Classification::touched_zero);
  EXPECT_GT(p.event_r, 0.0);
}

TEST(Shooting, LargeLaplacianIsCertified) {
  auto p = shoot(RadialGrid(3, 20.0, 2048), 3.0, 1.0, 20.0);
  EXPECT_EQ(p.classification, Classification::positive_on_window);
  EXPECT_TRUE(p.tail.certified);
}

TEST(Shooting, RejectsBadData) {
  RadialGrid g(3, 1.0, 64);
  EXPECT_THROW(shoot(g, 1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(shoot(g, 7.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(shoot(g, 7.0, 1.0, -1.0), DomainError);
}

TEST(Scaling, CommutesWithShooting) {
  RadialGrid g(4, 10.0, 1024);
  const double q = 5.0, a = 4.0 / (q + 1.0);
  auto base = shoot(g, q, 1.0, 2.0);
  ASSERT_TRUE(base.window_positive());
  for (double lam : {0.5, 2.0}) {
    auto scaled = rescale(base, lam);
    auto direct = shoot(g.rescaled(lam), q, std::pow(lam, a), 2.0 * std::pow(lam, a - 2.0));
    ASSERT_EQ(direct.u.size(), scaled.u.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_NEAR(direct.u[i] / scaled.u[i], 1.0, 1e-8);
      EXPECT_NEAR(direct.z[i] / scaled.z[i], 1.0, 1e-8);
    }
  }
}

TEST(Scaling, PreservesResidualUpToPower) {
  auto p = exact_solution(RadialGrid(3, 10.0, 1024));
  auto s = rescale(p, 2.0);
  // Delta^2 u_lambda + u_lambda^{-q} = lambda^{a-4} (residual of u)(x/lambda)
  auto r0 = residual(p), r1 = residual(s);
  const double k = std::pow(2.0, 0.5 - 4.0);
  for (std::size_t i = 4; i + 4 < r0.size(); i += 50) EXPECT_NEAR(r1[i], k * r0[i], 1e-12);
}

TEST(TailCertificate, RequiresPositiveLaplacianMargin) {
  auto tc = tail_certificate(3, 3.0, 1.0, 20.0, 100.0, 10.0, 1e-6, -1.0);
  EXPECT_FALSE(tc.certified);
}

TEST(GrowthGuard, LinearGrowthPassesQuadraticGuard) {
  auto p = exact_solution(RadialGrid(3, 20.0, 1024));
  EXPECT_TRUE(growth_guard(p, 2.0));
  EXPECT_FALSE(growth_guard(p, 0.5));
}
