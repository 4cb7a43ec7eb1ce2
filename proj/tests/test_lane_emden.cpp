#include <cmath>

#include <gtest/gtest.h>

#include "biharm/biharmonic.hpp"
#include "biharm/lane_emden.hpp"
#include "oracles/oracle_values.hpp"

using namespace biharm;

namespace {

SystemProfile closed_form_pair(std::size_t N) {
  const double lam = exact_amplitude();
  return solve_radial_system(RadialGrid(3, 8.0, N), 7.0, 1.0, lam, 3.0 * lam);
}

}  // namespace

TEST(SystemExponents, EqualityCurveIdentities) {
  for (double q : {1.5, 3.0, 7.0}) {
    for (double r : {0.5, 1.0, 2.0}) {
      SystemExponents e{q, r};
      EXPECT_LT(e.sigma(), 0.0);
      // on v = l u^sigma the comparison holds with equality
      for (double u : {0.3, 1.0, 4.0}) {
        const double v = e.ell() * std::pow(u, e.sigma());
        const double lhs = std::pow(v, r + 1.0) / (r + 1.0);
        const double rhs = std::pow(u, 1.0 - q) / (q - 1.0);
        EXPECT_NEAR(lhs / rhs, 1.0, 1e-13);
        const double size = std::abs(e.ell() * e.sigma() * std::pow(u, e.sigma() - 1.0)) * std::pow(v, r);
        EXPECT_NEAR(mixed_inequality_rhs(u, v, e), 0.0, 1e-13 * size);
      }
    }
  }
}

TEST(SystemSolve, ClosedFormPairMatchesBiharmonicSolution) {
  auto p = closed_form_pair(2048);
  ASSERT_TRUE(p.window_positive());
  auto ex = exact_solution(p.grid);
  for (std::size_t i = 0; i < p.grid.size(); i += 128) {
    EXPECT_NEAR(p.u[i] / ex.u[i], 1.0, 1e-8);
    EXPECT_NEAR(p.v[i] / ex.z[i], 1.0, 1e-7);
  }
  EXPECT_LT(system_residuals(p).relative_max, 1e-4);
}

TEST(SystemSolve, RejectsNonPositiveData) {
  RadialGrid g(3, 1.0, 64);
  EXPECT_THROW(solve_radial_system(g, 3.0, 1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(solve_radial_system(g, 3.0, 0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(solve_radial_system(g, 1.0, 1.0, 1.0, 1.0), DomainError);
}

TEST(SystemSolve, SmallVTouchesZero) {
  auto p = solve_radial_system(RadialGrid(3, 20.0, 2048), 3.0, 1.0, 1.0, 0.05);
  EXPECT_EQ(p.classification, Classification::touched_zero);
}

TEST(SystemComparison, OracleAtOrigin) {
  auto p = closed_form_pair(2048);
  auto rep = verify_system_comparison(p);
  EXPECT_TRUE(rep.pass);
  ASSERT_FALSE(rep.margin.empty());
  EXPECT_NEAR(rep.margin[0], oracle::system_comparison_at_0, 1e-9);
}

TEST(MixedInequality, MarginEqualsDroppedTermAndConverges) {
  auto p = closed_form_pair(2048);
  auto rep = verify_mixed_differential_inequality(p);
  EXPECT_TRUE(rep.pass);
  const std::size_t i1 = static_cast<std::size_t>(std::lround(1.0 / p.grid.spacing()));
  EXPECT_NEAR(rep.margin[i1], oracle::mixed_margin_at_1, 1e-4);
  EXPECT_NEAR(mixed_dropped_term(p.u[i1], p.du[i1], p.exps), oracle::mixed_dropped_term_at_1, 1e-7);

  auto refined = with_refinement(closed_form_pair(512), verify_mixed_differential_inequality);
  ASSERT_TRUE(refined.refinement_order.has_value());
  EXPECT_GE(*refined.refinement_order, 1.5);
}

TEST(MixedInequality, ResidualGateRejectsNonSolutions) {
  RadialGrid g(3, 2.0, 64);
  const std::size_t m = g.size();
  auto p = SystemProfile::from_fields(g, std::vector<double>(m, 1.0), std::vector<double>(m, 0.0),
                                      std::vector<double>(m, 1.0), std::vector<double>(m, 0.0), 3.0, 1.0);
  EXPECT_THROW(verify_mixed_differential_inequality(p), PreconditionError);
}

TEST(ConcavityStep, SyntheticSublinearExample) {
  // r = 1/2 with v = 1 and w = 1: sqrt(2) - 1 - 1/(2 sqrt(2))
  const double q = 3.0, r = 0.5;
  SystemExponents e{q, r};
  const double u = std::pow(2.0 / e.ell(), 1.0 / e.sigma());
  RadialGrid g(3, 1.0, 32);
  const std::size_t m = g.size();
  auto p = SystemProfile::from_fields(g, std::vector<double>(m, u), std::vector<double>(m, 0.0),
                                      std::vector<double>(m, 1.0), std::vector<double>(m, 0.0), q, r);
  auto rep = verify_concavity_step(p);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.evaluated, m);
  EXPECT_NEAR(rep.min_margin, std::sqrt(2.0) - 1.0 - 0.5 / std::sqrt(2.0), 1e-12);
}

TEST(ConcavityStep, SuperlinearIsSuperadditive) {
  for (double r : {1.0, 1.5, 3.0}) {
    SystemExponents e{4.0, r};
    const double u = std::pow(3.0 / e.ell(), 1.0 / e.sigma());  // w = 2 at v = 1
    RadialGrid g(3, 1.0, 16);
    const std::size_t m = g.size();
    auto p = SystemProfile::from_fields(g, std::vector<double>(m, u), std::vector<double>(m, 0.0),
                                        std::vector<double>(m, 1.0), std::vector<double>(m, 0.0), 4.0, r);
    auto rep = verify_concavity_step(p);
    EXPECT_TRUE(rep.pass);
    EXPECT_NEAR(rep.min_margin, std::pow(3.0, r) - 1.0 - std::pow(2.0, r), 1e-11);
  }
}

TEST(ConcavityStep, VacuousWhereComparisonHolds) {
  auto rep = verify_concavity_step(closed_form_pair(512));
  EXPECT_TRUE(rep.pass);
}
