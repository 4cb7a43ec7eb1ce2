#pragma once

// Method-of-lines simulation of u_t - Delta u = v^r, v_t - Delta v = u^p on a
// periodic interval or a radial ball with zero-flux boundary, and checks of
// the comparison between u and v that such solutions satisfy.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "biharm/errors.hpp"
#include "biharm/report.hpp"

namespace biharm {

struct PeriodicBox {
  double length = 2.0 * std::numbers::pi;
  std::size_t nodes = 512;
};

struct RadialBall {
  int dimension = 3;
  double radius = 1.0;
  std::size_t intervals = 256;
};

using Geometry = std::variant<PeriodicBox, RadialBall>;

inline std::string geometry_name(const Geometry& g) {
  return std::holds_alternative<PeriodicBox>(g) ? "periodic-box" : "radial-ball";
}

/// Node coordinates: x_j = j L / N (j < N) for the box, r_i = i h (i <= N) for the ball.
inline std::vector<double> geometry_nodes(const Geometry& g) {
  std::vector<double> x;
  if (const auto* box = std::get_if<PeriodicBox>(&g)) {
    if (box->nodes < 3 || !(box->length > 0.0)) throw DomainError("PeriodicBox: need >= 3 nodes and L > 0");
    const double h = box->length / static_cast<double>(box->nodes);
    for (std::size_t j = 0; j < box->nodes; ++j) x.push_back(h * static_cast<double>(j));
  } else {
    const auto& ball = std::get<RadialBall>(g);
    if (ball.intervals < 4 || !(ball.radius > 0.0) || ball.dimension < 1) {
      throw DomainError("RadialBall: need >= 4 intervals, radius > 0, dimension >= 1");
    }
    const double h = ball.radius / static_cast<double>(ball.intervals);
    for (std::size_t i = 0; i <= ball.intervals; ++i) x.push_back(h * static_cast<double>(i));
  }
  return x;
}

/// Three-point discrete Laplacian (L f)_i = a_i f_{i-1} + b_i f_i + c_i f_{i+1}.
/// Periodic rows wrap around; the ball uses the even extension at r = 0 and a
/// mirror ghost node at r = R (zero flux).
class DiffusionOperator {
 public:
  explicit DiffusionOperator(const Geometry& g) {
    if (const auto* box = std::get_if<PeriodicBox>(&g)) {
      periodic_ = true;
      const std::size_t m = box->nodes;
      const double h = box->length / static_cast<double>(m);
      const double k = 1.0 / (h * h);
      a_.assign(m, k);
      b_.assign(m, -2.0 * k);
      c_.assign(m, k);
    } else {
      const auto& ball = std::get<RadialBall>(g);
      const std::size_t m = ball.intervals + 1;
      const double h = ball.radius / static_cast<double>(ball.intervals);
      const double k = 1.0 / (h * h);
      const double dim1 = ball.dimension - 1.0;
      a_.assign(m, 0.0);
      b_.assign(m, 0.0);
      c_.assign(m, 0.0);
      b_[0] = -2.0 * ball.dimension * k;
      c_[0] = 2.0 * ball.dimension * k;
      for (std::size_t i = 1; i + 1 < m; ++i) {
        const double drift = dim1 / (2.0 * h * h * static_cast<double>(i));
        a_[i] = k - drift;
        b_[i] = -2.0 * k;
        c_[i] = k + drift;
      }
      a_[m - 1] = 2.0 * k;
      b_[m - 1] = -2.0 * k;
    }
  }

  std::size_t size() const { return b_.size(); }
  bool periodic() const { return periodic_; }

  std::vector<double> apply(const std::vector<double>& f) const {
    const std::size_t m = size();
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double left = i > 0 ? f[i - 1] : (periodic_ ? f[m - 1] : 0.0);
      const double right = i + 1 < m ? f[i + 1] : (periodic_ ? f[0] : 0.0);
      out[i] = a_[i] * left + b_[i] * f[i] + c_[i] * right;
    }
    return out;
  }

  /// Crank-Nicolson step of length dt for f_t = L f.
  void crank_nicolson(std::vector<double>& f, double dt) const {
    const double tau = 0.5 * dt;
    auto lf = apply(f);
    const std::size_t m = size();
    std::vector<double> rhs(m), lo(m), di(m), up(m);
    for (std::size_t i = 0; i < m; ++i) {
      rhs[i] = f[i] + tau * lf[i];
      lo[i] = -tau * a_[i];
      di[i] = 1.0 - tau * b_[i];
      up[i] = -tau * c_[i];
    }
    f = periodic_ ? solve_cyclic(lo, di, up, rhs) : solve_tridiagonal(lo, di, up, rhs);
  }

 private:
  // lo[0] and up[m-1] are ignored.
  static std::vector<double> solve_tridiagonal(const std::vector<double>& lo, std::vector<double> di,
                                               const std::vector<double>& up, std::vector<double> d) {
    const std::size_t m = di.size();
    for (std::size_t i = 1; i < m; ++i) {
      const double w = lo[i] / di[i - 1];
      di[i] -= w * up[i - 1];
      d[i] -= w * d[i - 1];
    }
    std::vector<double> x(m);
    x[m - 1] = d[m - 1] / di[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) x[i] = (d[i] - up[i] * x[i + 1]) / di[i];
    return x;
  }

  // Corner entries lo[0] (row 0, column m-1) and up[m-1] (row m-1, column 0),
  // removed by a Sherman-Morrison rank-one correction.
  static std::vector<double> solve_cyclic(const std::vector<double>& lo, const std::vector<double>& di,
                                          const std::vector<double>& up, const std::vector<double>& d) {
    const std::size_t m = di.size();
    const double alpha = up[m - 1];
    const double beta = lo[0];
    const double gamma = -di[0];
    std::vector<double> dd(di);
    dd[0] -= gamma;
    dd[m - 1] -= alpha * beta / gamma;
    auto x = solve_tridiagonal(lo, dd, up, d);
    std::vector<double> uvec(m, 0.0);
    uvec[0] = gamma;
    uvec[m - 1] = alpha;
    auto z = solve_tridiagonal(lo, dd, up, uvec);
    const double fact = (x[0] + beta * x[m - 1] / gamma) / (1.0 + z[0] + beta * z[m - 1] / gamma);
    for (std::size_t i = 0; i < m; ++i) x[i] -= fact * z[i];
    return x;
  }

  std::vector<double> a_, b_, c_;
  bool periodic_ = false;
};

/// Exponents with p >= r > 0 and p r > 1; sigma = (r+1)/(p+1) in (0, 1] and
/// l = sigma^{-1/(p+1)}, so that w = u - l v^sigma.
struct ParabolicExponents {
  double p, r;

  void validate() const {
    if (!(r > 0.0) || !(p >= r)) throw DomainError("parabolic exponents: need p >= r > 0");
    if (!(p * r > 1.0)) throw DomainError("parabolic exponents: need p r > 1");
  }
  double sigma() const { return (r + 1.0) / (p + 1.0); }
  double ell() const { return std::pow(sigma(), -1.0 / (p + 1.0)); }
};

struct StepControl {
  double dt_max = 1e-3;
  double reaction_increment = 1e-3;  // cap on dt * v^r / u and dt * u^p / v
  double blowup_factor = 1e6;        // relative to the initial max(u, v)
  double dt_min = 1e-13;
  bool reaction = true;              // false: pure diffusion
};

struct SpaceTimeField {
  Geometry geometry;
  std::vector<double> x;
  ParabolicExponents exps{};
  StepControl control;
  std::vector<double> t;
  std::vector<std::vector<double>> u, v;
  bool blow_up = false;
  bool underflow = false;
  bool positivity_lost = false;
  double t_reached = 0.0;
  std::size_t steps = 0;

  std::vector<double> w(std::size_t k) const {
    const double s = exps.sigma(), l = exps.ell();
    std::vector<double> out(u[k].size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = u[k][i] - l * std::pow(v[k][i], s);
    return out;
  }

  bool truncated() const { return blow_up || underflow || positivity_lost; }
};

/// t_k = k T / M, k = 0..M.
inline std::vector<double> uniform_times(double T, std::size_t intervals) {
  if (!(T > 0.0) || intervals == 0) throw DomainError("uniform_times: need T > 0 and at least one interval");
  std::vector<double> t(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) t[k] = T * static_cast<double>(k) / static_cast<double>(intervals);
  return t;
}

namespace detail {

inline void reaction_rk4(double& u, double& v, double p, double r, double dt) {
  auto f = [&](double a, double b, double& da, double& db) {
    da = std::pow(b, r);
    db = std::pow(a, p);
  };
  double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
  f(u, v, k1u, k1v);
  f(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v, k2u, k2v);
  f(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v, k3u, k3v);
  f(u + dt * k3u, v + dt * k3v, k4u, k4v);
  u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
  v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
}

}  // namespace detail

/// Strang splitting: half a Crank-Nicolson diffusion step, a full RK4
/// reaction step, another half diffusion step. Snapshots are stored at
/// `times` (which must start at 0 and increase); on blow-up, controller
/// underflow or loss of positivity the run stops and the output is truncated
/// at the last completed snapshot.
inline SpaceTimeField simulate(const Geometry& geometry, ParabolicExponents exps, std::vector<double> u,
                               std::vector<double> v, const std::vector<double>& times, StepControl control = {}) {
  exps.validate();
  SpaceTimeField out{geometry, geometry_nodes(geometry), exps, control};
  if (u.size() != out.x.size() || v.size() != out.x.size()) throw SizeError("simulate: initial data size mismatch");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0) || !(v[i] > 0.0) || !std::isfinite(u[i]) || !std::isfinite(v[i])) {
      throw DomainError("simulate: initial data must be positive and finite");
    }
  }
  if (times.empty() || times.front() != 0.0) throw DomainError("simulate: snapshot times must start at 0");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw DomainError("simulate: snapshot times must increase");
  }

  const DiffusionOperator lap(geometry);
  const double scale0 =
      std::max(*std::max_element(u.begin(), u.end()), *std::max_element(v.begin(), v.end()));
  const double ceiling = control.blowup_factor * scale0;

  out.t.push_back(0.0);
  out.u.push_back(u);
  out.v.push_back(v);
  double t = 0.0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double target = times[k];
    while (t < target) {
      double dt = std::min(control.dt_max, target - t);
      if (control.reaction) {
        double rate = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
          rate = std::max({rate, std::pow(v[i], exps.r) / u[i], std::pow(u[i], exps.p) / v[i]});
        }
        if (rate > 0.0) dt = std::min(dt, control.reaction_increment / rate);
      }
      if (dt < control.dt_min * std::max(1.0, t) && dt < target - t) {
        out.underflow = true;
        out.t_reached = t;
        return out;
      }
      const bool last = dt >= target - t;
      lap.crank_nicolson(u, 0.5 * dt);
      lap.crank_nicolson(v, 0.5 * dt);
      if (control.reaction) {
        for (std::size_t i = 0; i < u.size(); ++i) detail::reaction_rk4(u[i], v[i], exps.p, exps.r, dt);
      }
      lap.crank_nicolson(u, 0.5 * dt);
      lap.crank_nicolson(v, 0.5 * dt);
      t = last ? target : t + dt;
      ++out.steps;
      double top = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] > 0.0) || !(v[i] > 0.0) || !std::isfinite(u[i]) || !std::isfinite(v[i])) {
          out.positivity_lost = true;
          out.t_reached = t;
          return out;
        }
        top = std::max({top, u[i], v[i]});
      }
      if (top > ceiling) {
        out.blow_up = true;
        out.t_reached = t;
        return out;
      }
    }
    out.t.push_back(t);
    out.u.push_back(u);
    out.v.push_back(v);
  }
  out.t_reached = t;
  return out;
}

/// G = v^{r+1}/(r+1) - u^{p+1}/(p+1), constant along u' = v^r, v' = u^p.
inline double kinetic_invariant(double u, double v, const ParabolicExponents& e) {
  return std::pow(v, e.r + 1.0) / (e.r + 1.0) - std::pow(u, e.p + 1.0) / (e.p + 1.0);
}

namespace detail {

inline VerificationReport start_parabolic_report(const SpaceTimeField& f, std::string id) {
  VerificationReport rep;
  rep.inequality = std::move(id);
  rep.params["p"] = f.exps.p;
  rep.params["r"] = f.exps.r;
  if (const auto* ball = std::get_if<RadialBall>(&f.geometry)) rep.params["n"] = ball->dimension;
  if (f.truncated()) rep.add_caveat("run truncated at t = " + std::to_string(f.t_reached));
  return rep;
}

inline void push_node(VerificationReport& rep, double x, double t, double margin, bool counted) {
  rep.coordinate.push_back(x);
  rep.time.push_back(t);
  rep.margin.push_back(margin);
  rep.counted.push_back(counted ? 1 : 0);
}

}  // namespace detail

struct ParabolicResidual {
  double relative_max = 0.0;
};

/// Discrete residual of the system at interior snapshots, with central time
/// differences: max |(f_{k+1} - f_{k-1})/(2 dt) - L f_k - reaction| over
/// max(1, max |time derivative|).
inline ParabolicResidual parabolic_residual(const SpaceTimeField& f) {
  ParabolicResidual res;
  if (f.t.size() < 3) return res;
  const DiffusionOperator lap(f.geometry);
  double worst = 0.0, size = 1.0;
  for (std::size_t k = 1; k + 1 < f.t.size(); ++k) {
    const double dt2 = f.t[k + 1] - f.t[k - 1];
    const auto lu = lap.apply(f.u[k]);
    const auto lv = lap.apply(f.v[k]);
    for (std::size_t i = 0; i < lu.size(); ++i) {
      const double ut = (f.u[k + 1][i] - f.u[k - 1][i]) / dt2;
      const double vt = (f.v[k + 1][i] - f.v[k - 1][i]) / dt2;
      const double ru = f.control.reaction ? std::pow(f.v[k][i], f.exps.r) : 0.0;
      const double rv = f.control.reaction ? std::pow(f.u[k][i], f.exps.p) : 0.0;
      worst = std::max({worst, std::abs(ut - lu[i] - ru), std::abs(vt - lv[i] - rv)});
      size = std::max({size, std::abs(ut), std::abs(vt)});
    }
  }
  res.relative_max = worst / size;
  return res;
}

inline constexpr double kParabolicResidualThreshold = 1e-3;

/// margin = Delta w - w_t - l sigma v^{sigma-1} (u^p - l^p v^{sigma p}) at
/// interior snapshots. For sigma <= 1 this is -l sigma (sigma-1) v^{sigma-2} |grad v|^2 >= 0
/// on solutions; the three-point Laplacian keeps the sign exactly wherever
/// its off-diagonal weights are nonnegative.
inline VerificationReport verify_reaction_diffusion_inequality(const SpaceTimeField& f) {
  if (f.t.size() < 3) throw PreconditionError("reaction-diffusion inequality: need at least 3 snapshots");
  const auto res = parabolic_residual(f);
  if (res.relative_max > kParabolicResidualThreshold) {
    throw PreconditionError("reaction-diffusion inequality: snapshots do not solve the system (residual " +
                            std::to_string(res.relative_max) + ")");
  }
  const DiffusionOperator lap(f.geometry);
  const double s = f.exps.sigma(), l = f.exps.ell(), p = f.exps.p;
  const bool periodic = lap.periodic();
  const std::size_t m = f.x.size();
  VerificationReport rep = detail::start_parabolic_report(f, "reaction-diffusion-inequality");
  double size = 1.0;
  std::vector<std::vector<double>> w(f.t.size());
  for (std::size_t k = 0; k < f.t.size(); ++k) w[k] = f.w(k);
  for (std::size_t k = 1; k + 1 < f.t.size(); ++k) {
    const auto lw = lap.apply(w[k]);
    const double dt2 = f.t[k + 1] - f.t[k - 1];
    for (std::size_t i = 0; i < m; ++i) {
      const double wt = (w[k + 1][i] - w[k - 1][i]) / dt2;
      const double vv = f.v[k][i];
      const double react = l * s * std::pow(vv, s - 1.0) * (std::pow(f.u[k][i], p) - std::pow(l, p) * std::pow(vv, s * p));
      const bool counted = periodic || (i >= kTrimCells && i + kTrimCells < m);
      detail::push_node(rep, f.x[i], f.t[k], lw[i] - wt - react, counted);
      if (counted) size = std::max({size, std::abs(lw[i]), std::abs(wt)});
    }
  }
  rep.tolerance = kFourthOrderTol;
  rep.scale = size;
  finalize(rep);
  return rep;
}

/// margin = v^{r+1}/(r+1) - u^{p+1}/(p+1) at every stored node.
inline VerificationReport verify_parabolic_comparison(const SpaceTimeField& f) {
  VerificationReport rep = detail::start_parabolic_report(f, "parabolic-comparison");
  rep.add_caveat("eternal-solution hypothesis not certifiable at desk scale");
  double size = 1.0;
  for (std::size_t k = 0; k < f.t.size(); ++k) {
    for (std::size_t i = 0; i < f.x.size(); ++i) {
      const double a = std::pow(f.v[k][i], f.exps.r + 1.0) / (f.exps.r + 1.0);
      const double b = std::pow(f.u[k][i], f.exps.p + 1.0) / (f.exps.p + 1.0);
      detail::push_node(rep, f.x[i], f.t[k], a - b, true);
      size = std::max({size, a, b});
    }
  }
  rep.tolerance = kFourthOrderTol;
  rep.scale = size;
  finalize(rep);
  return rep;
}

/// If w(., 0) <= 0, checks max w <= tol * scale at every later snapshot
/// (margin = -w). Otherwise the report is marked not applicable.
inline VerificationReport verify_propagation(const SpaceTimeField& f) {
  VerificationReport rep = detail::start_parabolic_report(f, "sign-propagation");
  const double s = f.exps.sigma(), l = f.exps.ell();
  double size = 1.0;
  for (std::size_t k = 0; k < f.t.size(); ++k) {
    for (std::size_t i = 0; i < f.x.size(); ++i) {
      size = std::max({size, f.u[k][i], l * std::pow(f.v[k][i], s)});
    }
  }
  rep.tolerance = kFourthOrderTol;
  rep.scale = size;
  const auto w0 = f.w(0);
  const double w0_max = *std::max_element(w0.begin(), w0.end());
  if (w0_max > 1e-12 * size) {
    rep.applicable = false;
    rep.pass = true;
    rep.min_margin = -w0_max;
    rep.add_caveat("not applicable: initial w has positive values");
    return rep;
  }
  for (std::size_t k = 1; k < f.t.size(); ++k) {
    const auto wk = f.w(k);
    for (std::size_t i = 0; i < wk.size(); ++i) detail::push_node(rep, f.x[i], f.t[k], -wk[i], true);
  }
  finalize(rep);
  return rep;
}

/// Midpoint of (0, min{(p r - 1)/(r + 1), p - 1}).
inline double convexity_epsilon(double p, double r) {
  const double top = std::min((p * r - 1.0) / (r + 1.0), p - 1.0);
  if (!(p > 1.0) || !(top > 0.0)) throw PreconditionError("convexity steps: empty epsilon interval (need p > 1, p r > 1)");
  return 0.5 * top;
}

/// Samples 0 < b < a <= 1e3 (a log-uniform on [1e-3, 1e3], b = a U(0,1)) and
/// checks, relative to the largest term,
///   (a+b)^p - a^p >= b^p  and  a^p - b^p >= (p/(1+eps)) b^{p-eps-1} (a-b)^{1+eps}.
/// margin[k] is the smaller relative slack of the two at sample k.
inline VerificationReport verify_convexity_steps(double p, double r, std::size_t samples, std::uint64_t seed) {
  const double eps = convexity_epsilon(p, r);
  VerificationReport rep;
  rep.inequality = "convexity-steps";
  rep.params["p"] = p;
  rep.params["r"] = r;
  rep.params["epsilon"] = eps;
  rep.params["samples"] = static_cast<double>(samples);
  rep.params["seed"] = static_cast<double>(seed);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_a(-3.0, 3.0);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  rep.margin.reserve(samples);
  std::size_t violations = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double a = std::pow(10.0, log_a(rng));
    double u = frac(rng);
    while (u == 0.0) u = frac(rng);
    const double b = a * u;
    const double sum_p = std::pow(a + b, p);
    const double m1 = (sum_p - std::pow(a, p) - std::pow(b, p)) / sum_p;
    const double ap = std::pow(a, p);
    const double bound = p / (1.0 + eps) * std::pow(b, p - eps - 1.0) * std::pow(a - b, 1.0 + eps);
    const double m2 = (ap - std::pow(b, p) - bound) / ap;
    const double m = std::min(m1, m2);
    if (m < -1e-12) ++violations;
    rep.coordinate.push_back(static_cast<double>(k));
    rep.margin.push_back(m);
  }
  rep.params["violations"] = static_cast<double>(violations);
  rep.tolerance = 1e-12;
  rep.scale = 1.0;
  finalize(rep);
  return rep;
}

}  // namespace biharm
