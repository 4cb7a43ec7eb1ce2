#pragma once

// Radial solutions of the mixed-sign system
//   Delta u = v^r,  Delta v = -u^{-q}   (q > 1, r > 0)
// and the comparison v^{r+1}/(r+1) >= u^{1-q}/(q-1) between its components.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "biharm/errors.hpp"
#include "biharm/radial.hpp"
#include "biharm/report.hpp"
#include "biharm/shooting.hpp"

namespace biharm {

/// sigma = (1-q)/(r+1) < 0 and l = (-sigma)^{-1/(r+1)}; w = l u^sigma - v vanishes
/// exactly on the equality case of the comparison.
struct SystemExponents {
  double q, r;
  double sigma() const { return (1.0 - q) / (r + 1.0); }
  double ell() const { return std::pow(-sigma(), -1.0 / (r + 1.0)); }
};

struct SystemProfile {
  RadialGrid grid;
  Field u, du, v, dv;
  SystemExponents exps;
  double u0 = 0.0, v0 = 0.0;
  Classification classification = Classification::positive_uncertified;
  double event_r = std::numeric_limits<double>::quiet_NaN();
  TailCertificate tail;

  int dimension() const { return grid.dimension(); }
  bool has_data() const { return !u.empty(); }
  bool window_positive() const { return has_data() && positive_window(classification); }

  std::vector<double> w() const {
    const double s = exps.sigma(), l = exps.ell();
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = l * std::pow(u[i], s) - v[i];
    return out;
  }

  /// Wraps externally supplied fields; classification from the signs of u, v.
  static SystemProfile from_fields(const RadialGrid& grid, std::vector<double> u, std::vector<double> du,
                                   std::vector<double> v, std::vector<double> dv, double q, double r) {
    if (u.size() != grid.size() || du.size() != grid.size() || v.size() != grid.size() ||
        dv.size() != grid.size()) {
      throw SizeError("SystemProfile::from_fields: field sizes must match the grid");
    }
    SystemProfile p{grid, Field(std::move(u)), Field(std::move(du)), Field(std::move(v)), Field(std::move(dv)),
                    SystemExponents{q, r}};
    p.u0 = p.u[0];
    p.v0 = p.v[0];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!(p.u[i] > 0.0) || !(p.v[i] > 0.0)) {
        p.classification = Classification::touched_zero;
        p.event_r = grid.r(i);
        break;
      }
    }
    return p;
  }
};

inline SystemProfile solve_radial_system(const RadialGrid& grid, double q, double r, double u0, double v0,
                                         OdeTolerances tol = {}) {
  if (!(q > 1.0)) throw DomainError("solve_radial_system: q must be > 1");
  if (!(r > 0.0)) throw DomainError("solve_radial_system: r must be > 0");
  if (!(u0 > 0.0) || !(v0 > 0.0)) throw DomainError("solve_radial_system: u0, v0 must be positive");
  PairTrajectory tr = shoot_pair(grid, q, r, u0, v0, true, tol);

  SystemProfile p{grid, Field{}, Field{}, Field{}, Field{}, SystemExponents{q, r}, u0, v0};
  const std::size_t k = tr.u.size();
  if (k == grid.size() || k > RadialGrid::kMinIntervals) {
    if (k != grid.size()) p.grid = grid.truncated(k - 1);
    p.u = Field(std::move(tr.u));
    p.du = Field(std::move(tr.du));
    p.v = Field(std::move(tr.v));
    p.dv = Field(std::move(tr.dv));
  }
  if (tr.status == OdeStatus::underflow || tr.status == OdeStatus::nonfinite) {
    p.classification = Classification::integrator_failure;
    p.event_r = tr.stop_r;
    return p;
  }
  if (tr.u_floor || tr.v_floor) {
    p.classification = Classification::touched_zero;
    p.event_r = tr.stop_r;
    return p;
  }
  const std::size_t last = p.u.size() - 1;
  p.tail = tail_certificate(grid.dimension(), q, r, p.grid.r(last), p.u[last], p.du[last], p.v[last], p.dv[last]);
  p.classification = p.tail.certified ? Classification::positive_on_window : Classification::positive_uncertified;
  return p;
}

struct SystemResiduals {
  std::vector<double> res_u;  // Delta u - v^r
  std::vector<double> res_v;  // Delta v + u^{-q}
  double relative_max = 0.0;  // trimmed max |res| over max(1, max v^r, max u^{-q})
};

inline SystemResiduals system_residuals(const SystemProfile& p) {
  if (!p.has_data()) throw PreconditionError("system_residuals: profile has no data");
  SystemResiduals out{laplacian_from_derivative(p.du.values(), p.grid),
                      laplacian_from_derivative(p.dv.values(), p.grid)};
  double size = 1.0, worst = 0.0;
  const std::size_t m = p.u.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double vr = std::pow(p.v[i], p.exps.r);
    const double uq = std::pow(p.u[i], -p.exps.q);
    out.res_u[i] -= vr;
    out.res_v[i] += uq;
    if (i >= kTrimCells && i + kTrimCells < m) {
      size = std::max({size, vr, uq});
      worst = std::max({worst, std::abs(out.res_u[i]), std::abs(out.res_v[i])});
    }
  }
  out.relative_max = worst / size;
  return out;
}

/// Largest relative residual under which a profile is treated as a solution.
inline constexpr double kSystemResidualThreshold = 1e-3;

namespace detail {

inline void require_positive_pair(const SystemProfile& p, const char* who) {
  if (!p.has_data()) throw PreconditionError(std::string(who) + ": profile has no data");
  for (std::size_t i = 0; i < p.u.size(); ++i) {
    if (!(p.u[i] > 0.0) || !(p.v[i] > 0.0)) throw DomainError(std::string(who) + ": u, v must be positive");
  }
}

inline VerificationReport start_system_report(const SystemProfile& p, std::string id) {
  VerificationReport rep;
  rep.inequality = std::move(id);
  rep.params["n"] = p.dimension();
  rep.params["q"] = p.exps.q;
  rep.params["r"] = p.exps.r;
  rep.coordinate = p.grid.nodes();
  rep.counted.assign(p.grid.size(), 0);
  for (std::size_t i = kTrimCells; i + kTrimCells < p.grid.size(); ++i) rep.counted[i] = 1;
  if (p.classification == Classification::positive_uncertified) {
    rep.add_caveat("profile: tail positivity uncertified");
  } else if (p.classification != Classification::positive_on_window) {
    rep.add_caveat("profile: " + to_string(p.classification));
  }
  return rep;
}

}  // namespace detail

/// margin = v^{r+1}/(r+1) - u^{1-q}/(q-1).
inline VerificationReport verify_system_comparison(const SystemProfile& p) {
  detail::require_positive_pair(p, "system comparison");
  const double q = p.exps.q, r = p.exps.r;
  VerificationReport rep = detail::start_system_report(p, "system-comparison");
  rep.margin.resize(p.u.size());
  double size = 1.0;
  for (std::size_t i = 0; i < rep.margin.size(); ++i) {
    const double a = std::pow(p.v[i], r + 1.0) / (r + 1.0);
    const double b = std::pow(p.u[i], 1.0 - q) / (q - 1.0);
    rep.margin[i] = a - b;
    if (rep.counted[i]) size = std::max({size, a, b});
  }
  rep.tolerance = kFirstOrderTol;
  rep.scale = size;
  finalize(rep);
  return rep;
}

/// -l sigma u^{sigma-1} (l^r u^{sigma r} - v^r): lower bound for Delta w on solutions.
inline double mixed_inequality_rhs(double u, double v, const SystemExponents& e) {
  const double s = e.sigma(), l = e.ell();
  return -l * s * std::pow(u, s - 1.0) * (std::pow(l, e.r) * std::pow(u, s * e.r) - std::pow(v, e.r));
}

/// The term l sigma (sigma-1) u^{sigma-2} |grad u|^2 >= 0 discarded in that bound.
inline double mixed_dropped_term(double u, double du, const SystemExponents& e) {
  const double s = e.sigma(), l = e.ell();
  return l * s * (s - 1.0) * std::pow(u, s - 2.0) * du * du;
}

/// margin = Delta w - mixed_inequality_rhs.
inline VerificationReport verify_mixed_differential_inequality(const SystemProfile& p) {
  detail::require_positive_pair(p, "mixed differential inequality");
  const auto res = system_residuals(p);
  if (res.relative_max > kSystemResidualThreshold) {
    throw PreconditionError("mixed differential inequality: profile does not solve the system (residual " +
                            std::to_string(res.relative_max) + ")");
  }
  const auto w = p.w();
  const auto lap_w = radial_laplacian(w, p.grid);
  VerificationReport rep = detail::start_system_report(p, "mixed-differential-inequality");
  rep.margin.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) rep.margin[i] = lap_w[i] - mixed_inequality_rhs(p.u[i], p.v[i], p.exps);
  rep.tolerance = kFourthOrderTol;
  rep.scale = std::max(1.0, counted_max_abs(lap_w, rep.counted));
  finalize(rep);
  return rep;
}

/// Elementary step at nodes with w > 0, with a = v, b = w:
///   r < 1:  (a+b)^r - a^r >= r b (a+b)^{r-1}   (concavity of s^r)
///   r >= 1: (a+b)^r - a^r >= b^r.
inline VerificationReport verify_concavity_step(const SystemProfile& p) {
  detail::require_positive_pair(p, "concavity step");
  const double r = p.exps.r;
  const auto w = p.w();
  VerificationReport rep = detail::start_system_report(p, "concavity-step");
  rep.margin.assign(w.size(), 0.0);
  rep.counted.assign(w.size(), 0);
  double size = 1.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0)) continue;
    const double a = p.v[i], b = w[i];
    const double top = std::pow(a + b, r);
    rep.margin[i] = r < 1.0 ? top - std::pow(a, r) - r * b * std::pow(a + b, r - 1.0)
                            : top - std::pow(a, r) - std::pow(b, r);
    rep.counted[i] = 1;
    size = std::max(size, top);
  }
  rep.tolerance = 1e-12;
  rep.scale = size;
  finalize(rep);
  return rep;
}

/// Base-grid report with the self-convergence order of its margin over two
/// successive halvings of h (the profile is re-integrated on each grid).
inline VerificationReport with_refinement(const SystemProfile& p,
                                          const std::function<VerificationReport(const SystemProfile&)>& check,
                                          OdeTolerances tol = {}) {
  VerificationReport base = check(p);
  const auto redo = [&](int levels) {
    return solve_radial_system(p.grid.refined(levels), p.exps.q, p.exps.r, p.u0, p.v0, tol);
  };
  const auto mid = check(redo(1));
  const auto fine = check(redo(2));
  if (mid.margin.size() == 2 * (base.margin.size() - 1) + 1 &&
      fine.margin.size() == 4 * (base.margin.size() - 1) + 1) {
    base.refinement_order = self_convergence_order(base.margin, mid.margin, fine.margin);
  } else {
    base.add_caveat("refinement: profiles on refined grids cover different windows");
  }
  return base;
}

}  // namespace biharm
