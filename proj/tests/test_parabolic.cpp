#include <cmath>
#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include "biharm/parabolic.hpp"

using namespace biharm;

namespace {

std::vector<double> sampled(const Geometry& g, double (*f)(double)) {
  auto x = geometry_nodes(g);
  for (double& v : x) v = f(v);
  return x;
}

}  // namespace

TEST(DiffusionOperator, PeriodicSecondDifferenceOfSine) {
  PeriodicBox box;
  DiffusionOperator lap(box);
  auto f = sampled(box, [](double x) { return std::sin(x); });
  auto lf = lap.apply(f);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(lf[i], -f[i], 1e-4);
}

TEST(DiffusionOperator, RadialBallExactOnQuadratics) {
  RadialBall ball{3, 1.0, 64};
  DiffusionOperator lap(ball);
  auto f = sampled(ball, [](double r) { return r * r; });
  auto lf = lap.apply(f);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) EXPECT_NEAR(lf[i], 6.0, 1e-9);
}

TEST(DiffusionOperator, CrankNicolsonConservesPeriodicMass) {
  PeriodicBox box{2.0 * std::numbers::pi, 128};
  DiffusionOperator lap(box);
  auto f = sampled(box, [](double x) { return 2.0 + std::cos(3.0 * x); });
  const double before = std::accumulate(f.begin(), f.end(), 0.0);
  for (int k = 0; k < 50; ++k) lap.crank_nicolson(f, 0.01);
  EXPECT_NEAR(std::accumulate(f.begin(), f.end(), 0.0), before, 1e-10);
  // cos(3x) decays like exp(-9 t) up to the discretisation
  EXPECT_NEAR(*std::max_element(f.begin(), f.end()) - 2.0, std::exp(-9.0 * 0.5), 5e-3);
}

TEST(ParabolicExponents, Validation) {
  EXPECT_THROW((ParabolicExponents{1.0, 1.0}.validate()), DomainError);
  EXPECT_THROW((ParabolicExponents{1.0, 2.0}.validate()), DomainError);
  EXPECT_NO_THROW((ParabolicExponents{2.0, 1.0}.validate()));
  ParabolicExponents e{3.0, 1.0};
  EXPECT_NEAR(e.sigma(), 0.5, 0.0);
}

TEST(Simulate, HomogeneousDataFollowKineticOde) {
  // p = r = 2, u = v: u' = u^2, so u(t) = 1 / (1/u0 - t)
  PeriodicBox box{2.0 * std::numbers::pi, 16};
  const double u0 = 0.5;
  auto f = simulate(box, {2.0, 2.0}, std::vector<double>(16, u0), std::vector<double>(16, u0),
                    uniform_times(1.0, 4));
  ASSERT_FALSE(f.truncated());
  for (std::size_t k = 0; k < f.t.size(); ++k) {
    const double exact = 1.0 / (1.0 / u0 - f.t[k]);
    EXPECT_NEAR(f.u[k][3] / exact, 1.0, 1e-10);
  }
}

TEST(Simulate, KineticInvariantConservedForHomogeneousData) {
  PeriodicBox box{2.0 * std::numbers::pi, 8};
  ParabolicExponents e{3.0, 1.0};
  auto f = simulate(box, e, std::vector<double>(8, 0.5), std::vector<double>(8, 0.8), uniform_times(0.5, 10));
  const double g0 = kinetic_invariant(0.5, 0.8, e);
  for (std::size_t k = 0; k < f.t.size(); ++k) {
    EXPECT_NEAR(kinetic_invariant(f.u[k][0], f.v[k][0], e), g0, 1e-12 * std::max(1.0, std::abs(g0)));
  }
}

TEST(Simulate, EqualComponentsStayEqualWhenExponentsAgree) {
  PeriodicBox box{2.0 * std::numbers::pi, 64};
  auto u = sampled(box, [](double x) { return 1.0 + 0.3 * std::sin(x); });
  auto f = simulate(box, {2.0, 2.0}, u, u, uniform_times(0.1, 10));
  for (std::size_t k = 0; k < f.t.size(); ++k) EXPECT_EQ(f.u[k], f.v[k]);
}

TEST(Simulate, PureDiffusionToggleSmoothsTowardsMean) {
  PeriodicBox box{2.0 * std::numbers::pi, 64};
  auto u = sampled(box, [](double x) { return 1.0 + 0.5 * std::sin(x); });
  StepControl c;
  c.reaction = false;
  auto f = simulate(box, {2.0, 1.0}, u, u, uniform_times(2.0, 800), c);
  ASSERT_FALSE(f.truncated());
  const auto& last = f.u.back();
  EXPECT_NEAR(std::accumulate(last.begin(), last.end(), 0.0) / 64.0, 1.0, 1e-12);
  EXPECT_LT(*std::max_element(last.begin(), last.end()), 1.0 + 0.5 * std::exp(-2.0) + 1e-3);
  EXPECT_LT(parabolic_residual(f).relative_max, kParabolicResidualThreshold);
}

TEST(Simulate, BlowUpFlagStopsRun) {
  PeriodicBox box{2.0 * std::numbers::pi, 8};
  auto f = simulate(box, {2.0, 2.0}, std::vector<double>(8, 1.0), std::vector<double>(8, 1.0),
                    uniform_times(2.0, 20));
  EXPECT_TRUE(f.blow_up);
  EXPECT_LT(f.t_reached, 1.0);
  EXPECT_GT(f.t_reached, 0.99);
}

TEST(Simulate, RejectsBadInput) {
  PeriodicBox box{1.0, 8};
  EXPECT_THROW(simulate(box, {2.0, 1.0}, std::vector<double>(8, 0.0), std::vector<double>(8, 1.0),
                        uniform_times(1.0, 2)),
               DomainError);
  EXPECT_THROW(simulate(box, {2.0, 1.0}, std::vector<double>(7, 1.0), std::vector<double>(8, 1.0),
                        uniform_times(1.0, 2)),
               SizeError);
}

TEST(ReactionDiffusionInequality, HoldsOnRadialBall) {
  RadialBall ball{3, 1.0, 64};
  ParabolicExponents e{3.0, 1.0};
  // flat to third order at the wall: compatible with the zero-flux condition
  auto v = sampled(ball, [](double r) { return 0.8 + 0.4 * std::pow(1.0 - r * r, 4); });
  std::vector<double> u(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) u[i] = 0.9 * e.ell() * std::pow(v[i], e.sigma());
  StepControl c;
  c.dt_max = 2.5e-4;
  auto f = simulate(ball, e, u, v, uniform_times(0.1, 400), c);
  ASSERT_FALSE(f.truncated());
  auto rep = verify_reaction_diffusion_inequality(f);
  EXPECT_TRUE(rep.pass) << rep.min_margin;
  auto prop = verify_propagation(f);
  EXPECT_TRUE(prop.applicable);
  EXPECT_TRUE(prop.pass);
  EXPECT_TRUE(verify_parabolic_comparison(f).pass);
}

TEST(Propagation, NotApplicableWhenInitialWPositive) {
  PeriodicBox box{2.0 * std::numbers::pi, 8};
  ParabolicExponents e{2.0, 1.0};
  auto f = simulate(box, e, std::vector<double>(8, 2.0), std::vector<double>(8, 0.5), uniform_times(0.01, 4));
  auto rep = verify_propagation(f);
  EXPECT_FALSE(rep.applicable);
  EXPECT_TRUE(rep.pass);
  EXPECT_FALSE(verify_parabolic_comparison(f).pass);
}

TEST(ConvexitySteps, EpsilonInterval) {
  EXPECT_NEAR(convexity_epsilon(2.0, 1.0), 0.25, 1e-15);
  EXPECT_NEAR(convexity_epsilon(3.0, 2.0), 0.5 * 5.0 / 3.0, 1e-15);
  EXPECT_THROW(convexity_epsilon(1.0, 2.0), PreconditionError);
}

TEST(ConvexitySteps, NoViolationsAndDeterministic) {
  for (auto [p, r] : {std::pair{2.0, 1.0}, std::pair{3.0, 2.0}, std::pair{2.0, 2.0}}) {
    auto a = verify_convexity_steps(p, r, 20000, 42);
    EXPECT_TRUE(a.pass);
    EXPECT_EQ(a.params.at("violations"), 0.0);
    auto b = verify_convexity_steps(p, r, 20000, 42);
    EXPECT_EQ(a.margin, b.margin);
  }
}
