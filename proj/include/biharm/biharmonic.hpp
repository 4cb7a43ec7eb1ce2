#pragma once

// Positive radial solutions of Delta^2 u = -u^{-q}: the closed-form n = 3,
// q = 7 family, scaling images, and shooting from r = 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "biharm/errors.hpp"
#include "biharm/radial.hpp"
#include "biharm/shooting.hpp"

namespace biharm {

enum class Source { exact, shooting, rescaled, fields };

inline std::string to_string(Source s) {
  switch (s) {
    case Source::exact: return "exact";
    case Source::shooting: return "shooting";
    case Source::rescaled: return "rescaled";
    case Source::fields: return "fields";
  }
  return "unknown";
}

struct ProfileMeta {
  int n = 3;
  double q = 7.0;
  Source source = Source::shooting;
  double u0 = 0.0;
  double z0 = 0.0;
};

/// u, u', z = Delta u and z' on a radial window, plus its classification.
struct SolutionProfile {
  RadialGrid grid;
  Field u, du, z, dz;
  ProfileMeta meta;
  Classification classification = Classification::positive_uncertified;
  double event_r = std::numeric_limits<double>::quiet_NaN();
  TailCertificate tail;

  bool has_data() const { return !u.empty(); }
  bool window_positive() const { return has_data() && positive_window(classification); }

  /// Wraps externally supplied fields (tests, plumbing). Classification is
  /// derived from the signs of u and z only.
  static SolutionProfile from_fields(const RadialGrid& grid, std::vector<double> u, std::vector<double> du,
                                     std::vector<double> z, std::vector<double> dz, int n_dim, double q) {
    if (u.size() != grid.size() || du.size() != grid.size() || z.size() != grid.size() ||
        dz.size() != grid.size()) {
      throw SizeError("from_fields: field sizes must match the grid");
    }
    SolutionProfile p{grid, Field(std::move(u)), Field(std::move(du)), Field(std::move(z)),
                      Field(std::move(dz)), ProfileMeta{n_dim, q, Source::fields, 0.0, 0.0}};
    p.meta.u0 = p.u[0];
    p.meta.z0 = p.z[0];
    p.classification = Classification::positive_uncertified;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!(p.u[i] > 0.0)) {
        p.classification = Classification::touched_zero;
        p.event_r = grid.r(i);
        break;
      }
    }
    if (p.classification != Classification::touched_zero) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(p.z[i] > 0.0)) {
          p.classification = Classification::non_conforming;
          p.event_r = grid.r(i);
          break;
        }
      }
    }
    return p;
  }
};

/// 15^{-1/8}: amplitude of the closed-form solution.
inline double exact_amplitude() { return std::pow(15.0, -0.125); }

/// u(r) = 15^{-1/8} (1 + r^2)^{1/2}, which solves Delta^2 u = -u^{-7} in R^3.
inline SolutionProfile exact_solution(const RadialGrid& grid) {
  if (grid.dimension() != 3) throw DomainError("exact_solution: only available for n = 3");
  const double lam = exact_amplitude();
  const std::size_t m = grid.size();
  std::vector<double> u(m), du(m), z(m), dz(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = grid.r(i);
    const double s = 1.0 + r * r;
    const double root = std::sqrt(s);
    u[i] = lam * root;
    du[i] = lam * r / root;
    z[i] = lam * (3.0 + 2.0 * r * r) / (s * root);
    dz[i] = -lam * r * (5.0 + 2.0 * r * r) / (s * s * root);
  }
  SolutionProfile p{grid,
                    Field(std::move(u), true),
                    Field(std::move(du)),
                    Field(std::move(z), true),
                    Field(std::move(dz)),
                    ProfileMeta{3, 7.0, Source::exact, lam, 3.0 * lam}};
  // entire by construction; the tail bound does not apply to this linearly growing member
  p.classification = Classification::positive_on_window;
  p.tail.certified = true;
  return p;
}

/// u_lambda(x) = lambda^{4/(q+1)} u(x / lambda), again a solution.
inline SolutionProfile rescale(const SolutionProfile& p, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("rescale: lambda must be positive");
  if (!p.has_data()) throw PreconditionError("rescale: profile has no data");
  const double a = 4.0 / (p.meta.q + 1.0);
  auto scaled = [&](const Field& f, double power) {
    const double k = std::pow(lambda, power);
    std::vector<double> out(f.data());
    for (double& x : out) x *= k;
    return Field(std::move(out), f.positive());
  };
  SolutionProfile r{p.grid.rescaled(lambda),
                    scaled(p.u, a),
                    scaled(p.du, a - 1.0),
                    scaled(p.z, a - 2.0),
                    scaled(p.dz, a - 3.0),
                    p.meta};
  r.meta.source = Source::rescaled;
  r.meta.u0 = p.meta.u0 * std::pow(lambda, a);
  r.meta.z0 = p.meta.z0 * std::pow(lambda, a - 2.0);
  r.classification = p.classification;
  r.event_r = p.event_r * lambda;
  r.tail = p.tail;
  return r;
}

/// Shoots Delta^2 u = -u^{-q} from (u(0), Delta u(0)) = (u0, z0) across the grid.
inline SolutionProfile shoot(const RadialGrid& grid, double q, double u0, double z0, OdeTolerances tol = {}) {
  if (!(q > 1.0)) throw DomainError("shoot: q must be > 1");
  if (!(u0 > 0.0)) throw DomainError("shoot: u0 must be positive");
  if (!(z0 >= 0.0)) throw DomainError("shoot: z0 must be nonnegative");
  const int n = grid.dimension();
  ProfileMeta meta{n, q, Source::shooting, u0, z0};

  // z0 = 0 is admissible ODE data, just never a conforming profile
  PairTrajectory tr = shoot_pair(grid, q, 1.0, u0, z0, false, tol);

  const std::size_t k = tr.u.size();
  SolutionProfile p{grid, Field{}, Field{}, Field{}, Field{}, meta};
  if (k == grid.size()) {
    p.u = Field(std::move(tr.u));
    p.du = Field(std::move(tr.du));
    p.z = Field(std::move(tr.v));
    p.dz = Field(std::move(tr.dv));
  } else if (k > RadialGrid::kMinIntervals) {
    p.grid = grid.truncated(k - 1);
    p.u = Field(std::move(tr.u));
    p.du = Field(std::move(tr.du));
    p.z = Field(std::move(tr.v));
    p.dz = Field(std::move(tr.dv));
  }

  if (tr.status == OdeStatus::underflow || tr.status == OdeStatus::nonfinite) {
    p.classification = Classification::integrator_failure;
    p.event_r = tr.stop_r;
    return p;
  }
  if (tr.u_floor) {
    p.classification = Classification::touched_zero;
    p.event_r = tr.stop_r;
    return p;
  }
  for (std::size_t i = 0; i < p.z.size(); ++i) {
    if (!(p.z[i] > 0.0)) {
      p.classification = Classification::non_conforming;
      p.event_r = p.grid.r(i);
      return p;
    }
  }
  const std::size_t last = p.u.size() - 1;
  p.tail = tail_certificate(n, q, 1.0, p.grid.r(last), p.u[last], p.du[last], p.z[last], p.dz[last]);
  p.classification = p.tail.certified ? Classification::positive_on_window : Classification::positive_uncertified;
  return p;
}

/// Delta(Delta u) + u^{-q} evaluated from the carried derivative z' = (Delta u)'
/// with second-order central differences: (z')' + (n-1) z'/r + u^{-q}.
inline Field residual(const SolutionProfile& p) {
  if (!p.has_data()) throw PreconditionError("residual: profile has no data");
  auto res = laplacian_from_derivative(p.dz.values(), p.grid);
  for (std::size_t i = 0; i < res.size(); ++i) res[i] += std::pow(p.u[i], -p.meta.q);
  return Field(std::move(res));
}

/// Largest |f_i| over nodes at least `margin_cells` cells from both ends.
inline double trimmed_max_abs(std::span<const double> f, std::size_t margin_cells = 4) {
  double m = 0.0;
  if (f.size() <= 2 * margin_cells) return m;
  for (std::size_t i = margin_cells; i + margin_cells < f.size(); ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

/// Heuristic growth guard: g = u / r^exponent must be non-increasing beyond the
/// last sign change of its discrete derivative. Returns true when it is.
inline bool growth_guard(const SolutionProfile& p, double exponent = 2.0) {
  if (!p.has_data() || p.u.size() < 4) return false;
  std::vector<double> d;
  for (std::size_t i = 1; i + 1 < p.u.size(); ++i) {
    const double g0 = p.u[i] / std::pow(p.grid.r(i), exponent);
    const double g1 = p.u[i + 1] / std::pow(p.grid.r(i + 1), exponent);
    d.push_back(g1 - g0);
  }
  std::size_t start = 0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if ((d[i] > 0.0) != (d[i - 1] > 0.0)) start = i;
  }
  for (std::size_t i = start; i < d.size(); ++i) {
    if (d[i] > 0.0) return false;
  }
  return true;
}

}  // namespace biharm
