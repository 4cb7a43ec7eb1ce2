#pragma once

// Plateau cutoffs phi = psi^m and their empirical derivative-bound constants.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "biharm/errors.hpp"
#include "biharm/radial.hpp"

namespace biharm {

/// Values and t-derivatives of the radial plateau bump psi(t), t = |x|:
/// psi = 1 for t <= 1/2, psi = 0 for t >= 1, and psi = exp(1 - 1/(1 - s^2))
/// with s = 2t - 1 in between.
struct BumpJet {
  double value;
  double d1;
  double d2;
};

inline BumpJet plateau_bump_jet(double t) {
  const double s = 2.0 * std::abs(t) - 1.0;
  if (s <= 0.0) return {1.0, 0.0, 0.0};
  if (s >= 1.0) return {0.0, 0.0, 0.0};
  const double g = 1.0 - s * s;
  const double e = std::exp(1.0 - 1.0 / g);
  const double ds = e * (-2.0 * s / (g * g));
  const double dss = e * (4.0 * s * s - (2.0 + 6.0 * s * s) * g) / (g * g * g * g);
  return {e, 2.0 * ds, 4.0 * dss};
}

inline double plateau_bump(double t) { return plateau_bump_jet(t).value; }

struct CutoffFamily {
  double m;
  double scale;  // R
  RadialGrid grid;
  Field phi;
  double c_lap;   // sup |Delta phi| / phi^(1-2/m)
  double c_grad;  // sup phi^-1 |grad phi|^2 / phi^(1-2/m)

  /// phi_R(r) = psi(r/R)^m, evaluated in closed form.
  double value(double r) const { return std::pow(plateau_bump(r / scale), m); }
};

/// Nodes with phi above this floor enter the measured constants.
inline constexpr double kCutoffFloor = 1e-12;

/// Samples phi_R = psi(|x|/R)^m on [0, R] with `intervals` cells and measures
/// the bound constants with the radial finite-difference stencils.
inline CutoffFamily build_cutoff(double m, double R, std::size_t intervals, int dimension = 3) {
  if (!(m >= 2.0)) throw DomainError("build_cutoff: profile exponent m must be >= 2");
  if (!(R > 0.0)) throw DomainError("build_cutoff: scale R must be positive");
  RadialGrid grid(dimension, R, intervals);
  Field phi = Field::sample(grid, [&](double r) { return std::pow(plateau_bump(r / R), m); });
  auto lap = radial_laplacian(phi.values(), grid);
  auto grad2 = radial_gradient_sq(phi.values(), grid);
  const double power = 1.0 - 2.0 / m;
  double c_lap = 0.0;
  double c_grad = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double p = phi[i];
    if (!(p > kCutoffFloor)) continue;
    const double weight = std::pow(p, power);
    c_lap = std::max(c_lap, std::abs(lap[i]) / weight);
    c_grad = std::max(c_grad, grad2[i] / p / weight);
  }
  return CutoffFamily{m, R, grid, std::move(phi), c_lap, c_grad};
}

}  // namespace biharm
