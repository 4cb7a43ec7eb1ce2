#pragma once

// Pointwise checks of the gradient estimates for Delta^2 u = -u^{-q} and of
// the intermediate differential inequalities used to prove them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "biharm/biharmonic.hpp"
#include "biharm/errors.hpp"
#include "biharm/params.hpp"
#include "biharm/radial.hpp"
#include "biharm/report.hpp"

namespace biharm {

/// A = |grad u|^2 / u, B = u^{-(q-1)/2}, w = -Delta u + alpha A + beta B, w_gamma = u^{-gamma} w.
struct AuxFields {
  std::vector<double> A, B, w, w_gamma;
};

namespace detail {

inline void require_positive_u(const SolutionProfile& p, const char* who) {
  if (!p.has_data()) throw PreconditionError(std::string(who) + ": profile has no data");
  for (std::size_t i = 0; i < p.u.size(); ++i) {
    if (!(p.u[i] > 0.0)) throw DomainError(std::string(who) + ": u must be positive");
  }
}

inline std::vector<char> trimmed_mask(std::size_t size, std::size_t cells = kTrimCells) {
  std::vector<char> mask(size, 0);
  for (std::size_t i = cells; i + cells < size; ++i) mask[i] = 1;
  return mask;
}

inline VerificationReport start_report(const SolutionProfile& p, std::string id) {
  VerificationReport rep;
  rep.inequality = std::move(id);
  rep.params["n"] = p.meta.n;
  rep.params["q"] = p.meta.q;
  rep.coordinate = p.grid.nodes();
  rep.counted = trimmed_mask(p.grid.size());
  return rep;
}

inline void classification_caveats(const SolutionProfile& p, VerificationReport& rep) {
  switch (p.classification) {
    case Classification::positive_on_window: break;
    case Classification::positive_uncertified: rep.add_caveat("profile: tail positivity uncertified"); break;
    default: rep.add_caveat("profile: " + to_string(p.classification));
  }
}

inline void growth_caveats(const SolutionProfile& p, double exponent, VerificationReport& rep) {
  rep.add_caveat("growth: heuristic");
  if (!growth_guard(p, exponent)) rep.add_caveat("growth: guard failed");
}

}  // namespace detail

inline AuxFields aux_fields(const SolutionProfile& p, double alpha, double beta, double gamma = 0.0) {
  detail::require_positive_u(p, "aux_fields");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("aux_fields: gamma must lie in [0,1)");
  const double ph = (p.meta.q - 1.0) / 2.0;
  const std::size_t m = p.u.size();
  AuxFields f{std::vector<double>(m), std::vector<double>(m), std::vector<double>(m), std::vector<double>(m)};
  for (std::size_t i = 0; i < m; ++i) {
    const double u = p.u[i];
    f.A[i] = p.du[i] * p.du[i] / u;
    f.B[i] = std::pow(u, -ph);
    f.w[i] = -p.z[i] + alpha * f.A[i] + beta * f.B[i];
    f.w_gamma[i] = std::pow(u, -gamma) * f.w[i];
  }
  return f;
}

namespace detail {

inline VerificationReport gradient_margin(const SolutionProfile& p, double alpha, double beta, std::string id) {
  auto aux = aux_fields(p, alpha, beta);
  VerificationReport rep = start_report(p, std::move(id));
  rep.params["alpha"] = alpha;
  rep.params["beta"] = beta;
  rep.margin.resize(p.u.size());
  for (std::size_t i = 0; i < rep.margin.size(); ++i) rep.margin[i] = -aux.w[i];
  rep.tolerance = kFirstOrderTol;
  rep.scale = std::max(1.0, counted_max_abs(p.z.data(), rep.counted));
  classification_caveats(p, rep);
  finalize(rep);
  return rep;
}

}  // namespace detail

/// Delta u >= sqrt(2/(q-1)) u^{-(q-1)/2}.
inline VerificationReport verify_weak_inequality(const SolutionProfile& p) {
  const double beta = std::sqrt(2.0 / (p.meta.q - 1.0));
  return detail::gradient_margin(p, 0.0, beta, "weak-inequality");
}

/// Delta u >= alpha |grad u|^2/u + beta u^{-(q-1)/2} for admissible (alpha, beta).
inline VerificationReport verify_gradient_estimate(const SolutionProfile& p, double alpha, double beta) {
  auto adm = check_admissible(ParamSet{p.meta.n, p.meta.q, alpha, beta, std::nullopt});
  if (!adm.admissible) {
    std::string msg = "gradient estimate: parameters outside the admissible region:";
    for (const auto& r : adm.reasons) msg += " " + r + ";";
    throw PreconditionError(msg);
  }
  auto rep = detail::gradient_margin(p, alpha, beta, "gradient-estimate");
  detail::growth_caveats(p, 2.0, rep);
  return rep;
}

/// The estimate at alpha = 1/2, beta = sqrt(2/(q-1-2/n)), valid for q >= 3.
inline VerificationReport verify_half_alpha_estimate(const SolutionProfile& p) {
  if (!(p.meta.q >= 3.0)) throw PreconditionError("half-alpha estimate: requires q >= 3");
  const double beta = std::sqrt(2.0 / (p.meta.q - 1.0 - 2.0 / p.meta.n));
  auto rep = detail::gradient_margin(p, 0.5, beta, "half-alpha-estimate");
  detail::growth_caveats(p, tau(p.meta.q, p.meta.n), rep);
  return rep;
}

/// Delta u >= |grad u|^2 / (2u), valid for every q > 1.
inline VerificationReport verify_half_gradient_estimate(const SolutionProfile& p) {
  auto rep = detail::gradient_margin(p, 0.5, 0.0, "half-gradient-estimate");
  detail::growth_caveats(p, 4.0, rep);
  return rep;
}

/// Lower bound for u Delta w:
///   u Delta w >= -2 alpha u'w' + (2 alpha/n) w^2 + K1 alpha A w + K2 beta B w
///                + I1 alpha A^2 + I2 B^2 + I3 beta A B.
inline VerificationReport verify_auxiliary_inequality(const SolutionProfile& p, double alpha, double beta) {
  if (!(alpha >= 0.0 && beta >= 0.0)) throw DomainError("auxiliary inequality: alpha, beta must be >= 0");
  const auto c = coefficients(ParamSet{p.meta.n, p.meta.q, alpha, beta, std::nullopt});
  auto aux = aux_fields(p, alpha, beta);
  const auto lap_w = radial_laplacian(aux.w, p.grid);
  const auto dw = radial_derivative(aux.w, p.grid);
  const double n = p.meta.n;

  VerificationReport rep = detail::start_report(p, "auxiliary-inequality");
  rep.params["alpha"] = alpha;
  rep.params["beta"] = beta;
  rep.margin.resize(p.u.size());
  std::vector<double> lhs(p.u.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const double A = aux.A[i], B = aux.B[i], w = aux.w[i];
    lhs[i] = p.u[i] * lap_w[i];
    const double rhs = -2.0 * alpha * p.du[i] * dw[i] + (2.0 * alpha / n) * w * w + c.K1 * alpha * A * w +
                       c.K2 * beta * B * w + c.I1 * alpha * A * A + c.I2 * B * B + c.I3 * beta * A * B;
    rep.margin[i] = lhs[i] - rhs;
  }
  rep.tolerance = kFourthOrderTol;
  rep.scale = std::max(1.0, counted_max_abs(lhs, rep.counted));
  detail::classification_caveats(p, rep);
  finalize(rep);
  return rep;
}

/// Equality u Delta B = p B w + p (p + 1 - alpha) A B - p beta B^2 with p = (q-1)/2.
/// Reported as margin = -|LHS - RHS|.
inline VerificationReport verify_inverse_power_identity(const SolutionProfile& p, double alpha, double beta) {
  auto aux = aux_fields(p, alpha, beta);
  const auto lap_b = radial_laplacian(aux.B, p.grid);
  const double ph = (p.meta.q - 1.0) / 2.0;
  VerificationReport rep = detail::start_report(p, "inverse-power-identity");
  rep.params["alpha"] = alpha;
  rep.params["beta"] = beta;
  rep.margin.resize(p.u.size());
  std::vector<double> lhs(p.u.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    lhs[i] = p.u[i] * lap_b[i];
    const double rhs = ph * aux.B[i] * aux.w[i] + ph * (ph + 1.0 - alpha) * aux.A[i] * aux.B[i] -
                       ph * beta * aux.B[i] * aux.B[i];
    rep.margin[i] = -std::abs(lhs[i] - rhs);
  }
  rep.tolerance = kFourthOrderTol;
  rep.scale = std::max(1.0, counted_max_abs(lhs, rep.counted));
  detail::classification_caveats(p, rep);
  finalize(rep);
  return rep;
}

/// Weighted form for w_gamma = u^{-gamma} w:
///   u^{1-gamma} Delta w_gamma >= J1 w_gamma^2 + u^{-gamma} (-2 J2 u' w_gamma' + L1 A w_gamma + L2 B w_gamma).
inline VerificationReport verify_weighted_inequality(const SolutionProfile& p, double alpha, double beta,
                                                     double gamma) {
  const ParamSet ps{p.meta.n, p.meta.q, alpha, beta, gamma};
  auto adm = check_admissible(ps);
  if (!adm.admissible) throw PreconditionError("weighted inequality: (alpha, beta) outside the admissible region");
  if (!gamma_interval(alpha, p.meta.q, p.meta.n).contains(gamma)) {
    throw PreconditionError("weighted inequality: gamma outside the feasible interval");
  }
  const auto c = coefficients(ps);
  auto aux = aux_fields(p, alpha, beta, gamma);
  const auto lap_wg = radial_laplacian(aux.w_gamma, p.grid);
  const auto dwg = radial_derivative(aux.w_gamma, p.grid);

  VerificationReport rep = detail::start_report(p, "weighted-inequality");
  rep.params["alpha"] = alpha;
  rep.params["beta"] = beta;
  rep.params["gamma"] = gamma;
  rep.margin.resize(p.u.size());
  std::vector<double> lhs(p.u.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const double u = p.u[i];
    const double wg = aux.w_gamma[i];
    lhs[i] = std::pow(u, 1.0 - gamma) * lap_wg[i];
    const double rhs = c.J1 * wg * wg + std::pow(u, -gamma) * (-2.0 * c.J2 * p.du[i] * dwg[i] +
                                                                c.L1 * aux.A[i] * wg + c.L2 * aux.B[i] * wg);
    rep.margin[i] = lhs[i] - rhs;
  }
  rep.tolerance = kFourthOrderTol;
  rep.scale = std::max(1.0, counted_max_abs(lhs, rep.counted));
  detail::classification_caveats(p, rep);
  detail::growth_caveats(p, growth_exponent(gamma), rep);
  finalize(rep);
  return rep;
}

/// |D^2 u|^2 >= (Delta u)^2 / n for the radial Hessian diag(u'', u'/r, ..., u'/r).
inline VerificationReport verify_hessian_trace_bound(const SolutionProfile& p) {
  detail::require_positive_u(p, "hessian trace bound");
  const auto upp = odd_derivative(p.du.values(), p.grid);
  const double n = p.meta.n;
  VerificationReport rep = detail::start_report(p, "hessian-trace-bound");
  rep.margin.resize(p.u.size());
  std::vector<double> norm(p.u.size());
  for (std::size_t i = 0; i < norm.size(); ++i) {
    const double ang = i == 0 ? upp[0] : p.du[i] / p.grid.r(i);
    norm[i] = upp[i] * upp[i] + (n - 1.0) * ang * ang;
    const double tr = upp[i] + (n - 1.0) * ang;
    rep.margin[i] = norm[i] - tr * tr / n;
  }
  rep.tolerance = 1e-12;
  rep.scale = std::max(1.0, counted_max_abs(norm, rep.counted));
  finalize(rep);
  return rep;
}

struct CurvatureResult {
  Field scal;
  VerificationReport report;
};

/// Scalar curvature of the conformal metric u^{4/(n-2)} |dx|^2:
///   scal = -(2(n-1)/(n-2)) (Delta u - |grad u|^2 / (2u)) u^{-n/(n-2)}.
/// The report passes iff scal < tol on the trimmed interior (margin = -scal).
inline CurvatureResult scalar_curvature(const SolutionProfile& p) {
  detail::require_positive_u(p, "scalar curvature");
  const double n = p.meta.n;
  const double k = 2.0 * (n - 1.0) / (n - 2.0);
  std::vector<double> s(p.u.size());
  VerificationReport rep = detail::start_report(p, "negative-scalar-curvature");
  rep.margin.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double u = p.u[i];
    s[i] = -k * (p.z[i] - p.du[i] * p.du[i] / (2.0 * u)) * std::pow(u, -n / (n - 2.0));
    rep.margin[i] = -s[i];
  }
  rep.tolerance = kFirstOrderTol;
  rep.scale = std::max(1.0, counted_max_abs(s, rep.counted));
  detail::classification_caveats(p, rep);
  detail::growth_caveats(p, 4.0, rep);
  finalize(rep);
  return {Field(std::move(s)), std::move(rep)};
}

/// Recomputes a profile of the same origin on another grid.
inline SolutionProfile regenerate(const SolutionProfile& p, const RadialGrid& grid, OdeTolerances tol = {}) {
  switch (p.meta.source) {
    case Source::exact: return exact_solution(grid);
    case Source::shooting: return shoot(grid, p.meta.q, p.meta.u0, p.meta.z0, tol);
    default: throw PreconditionError("regenerate: only exact and shooting profiles can be recomputed");
  }
}

/// Runs `check` on the profile's grid and on two successive halvings of h,
/// and attaches the self-convergence order of the margin field to the
/// base-grid report.
inline VerificationReport with_refinement(const SolutionProfile& p,
                                          const std::function<VerificationReport(const SolutionProfile&)>& check) {
  VerificationReport base = check(p);
  const auto mid = check(regenerate(p, p.grid.refined(1)));
  const auto fine = check(regenerate(p, p.grid.refined(2)));
  if (mid.margin.size() == 2 * (base.margin.size() - 1) + 1 &&
      fine.margin.size() == 4 * (base.margin.size() - 1) + 1) {
    base.refinement_order = self_convergence_order(base.margin, mid.margin, fine.margin);
  } else {
    base.add_caveat("refinement: profiles on refined grids cover different windows");
  }
  return base;
}

}  // namespace biharm
