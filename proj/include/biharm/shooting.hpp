#pragma once

// Radial initial-value integration of the pair
//   Delta u = v^e,   Delta v = -u^{-q}
// from r = 0 with u(0) = u0, v(0) = v0, u'(0) = v'(0) = 0. The biharmonic
// equation Delta^2 u = -u^{-q} is the case e = 1 with v = Delta u.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "biharm/errors.hpp"
#include "biharm/ode.hpp"
#include "biharm/radial.hpp"

namespace biharm {

enum class Classification {
  positive_on_window,    // u, v > 0 on the window and the tail bound certifies v > 0 beyond it
  positive_uncertified,  // u, v > 0 on the window, tail bound inconclusive
  non_conforming,        // v = Delta u <= 0 somewhere while u stays positive
  touched_zero,          // u (or v, for the mixed system) fell below the positivity floor
  integrator_failure,    // step size underflow or non-finite state
};

inline std::string to_string(Classification c) {
  switch (c) {
    case Classification::positive_on_window: return "positive-on-window";
    case Classification::positive_uncertified: return "positive-uncertified";
    case Classification::non_conforming: return "non-conforming";
    case Classification::touched_zero: return "touched-zero";
    case Classification::integrator_failure: return "integrator-failure";
  }
  return "unknown";
}

/// u, v > 0 on the window (certified or not).
inline bool positive_window(Classification c) {
  return c == Classification::positive_on_window || c == Classification::positive_uncertified;
}

/// Sufficient condition, evaluated at the window end R, for v to stay above
/// v(R)/2 on (R, inf). While v >= v(R)/2 we have Delta u >= (v(R)/2)^e, so
/// u(s) >= max(u_R, u_R + c (s^2 - s0^2)) with c = (v(R)/2)^e / (2n) and
/// s0^2 = R^2 n/(n-2); integrating Delta v = -u^{-q} against that lower bound
/// gives the total possible further decrease
///   D = [R |v'(R)| + (u_R^{-q} R^2/(n-2) + u_R^{1-q} / (2c(q-1)))] / (n-2).
/// D < v(R)/2 closes the continuity argument.
struct TailCertificate {
  bool certified = false;
  double decrease_bound = std::numeric_limits<double>::infinity();
  double available = 0.0;
};

inline TailCertificate tail_certificate(int n, double q, double e, double R, double uR, double duR,
                                        double vR, double dvR) {
  TailCertificate tc;
  if (!(uR > 0.0 && vR > 0.0 && duR >= 0.0 && dvR <= 0.0)) return tc;
  const double nm2 = n - 2.0;
  const double c = std::pow(0.5 * vR, e) / (2.0 * n);
  const double decrease =
      (R * std::abs(dvR) + std::pow(uR, -q) * R * R / nm2 + std::pow(uR, 1.0 - q) / (2.0 * c * (q - 1.0))) /
      nm2;
  tc.decrease_bound = decrease;
  tc.available = 0.5 * vR;
  tc.certified = decrease < tc.available;
  return tc;
}

/// Positivity floor relative to the initial value.
inline constexpr double kPositivityFloor = 1e-8;

struct PairTrajectory {
  std::vector<double> u, du, v, dv;  // values at grid nodes 0..k
  OdeStatus status = OdeStatus::reached;
  bool u_floor = false;
  bool v_floor = false;
  double stop_r = std::numeric_limits<double>::quiet_NaN();
};

/// Integrates on the grid nodes. Node 1 comes from the fourth-order Taylor
/// expansion at the origin; the adaptive pair takes over from r_1.
/// With `stop_on_v_floor` the run also ends when v drops below its floor.
inline PairTrajectory shoot_pair(const RadialGrid& grid, double q, double e, double u0, double v0,
                                 bool stop_on_v_floor, OdeTolerances tol = {}) {
  if (!(u0 > 0.0)) throw DomainError("shooting: u0 must be positive");
  const bool linear_zero_start = e == 1.0 && v0 == 0.0 && !stop_on_v_floor;
  if (!(v0 > 0.0) && !linear_zero_start) throw DomainError("shooting: v0 must be positive");
  const int n = grid.dimension();
  const double dim1 = n - 1.0;
  const double h = grid.spacing();
  PairTrajectory tr;
  const std::size_t total = grid.size();
  tr.u.reserve(total);
  tr.du.reserve(total);
  tr.v.reserve(total);
  tr.dv.reserve(total);
  auto push = [&](const std::array<double, 4>& y) {
    tr.u.push_back(y[0]);
    tr.du.push_back(y[1]);
    tr.v.push_back(y[2]);
    tr.dv.push_back(y[3]);
  };
  push({u0, 0.0, v0, 0.0});

  // Taylor data at r = 0: Delta u = v0^e, Delta v = -u0^{-q},
  // Delta^2 u = e v0^{e-1} Delta v, Delta^2 v = q u0^{-q-1} Delta u.
  const double lap_u = std::pow(v0, e);
  const double lap_v = -std::pow(u0, -q);
  const double bilap_u = e * std::pow(v0, e - 1.0) * lap_v;
  const double bilap_v = q * std::pow(u0, -q - 1.0) * lap_u;
  const double c2 = 1.0 / (2.0 * n);
  const double c4 = 1.0 / (8.0 * n * (n + 2.0));
  const double r1 = h;
  std::array<double, 4> y{
      u0 + lap_u * c2 * r1 * r1 + bilap_u * c4 * std::pow(r1, 4),
      lap_u * r1 / n + bilap_u * std::pow(r1, 3) / (2.0 * n * (n + 2.0)),
      v0 + lap_v * c2 * r1 * r1 + bilap_v * c4 * std::pow(r1, 4),
      lap_v * r1 / n + bilap_v * std::pow(r1, 3) / (2.0 * n * (n + 2.0)),
  };
  push(y);

  const double u_floor = kPositivityFloor * u0;
  const double v_floor = kPositivityFloor * v0;
  auto rhs = [&](double r, const std::array<double, 4>& s, std::array<double, 4>& ds) {
    ds[0] = s[1];
    ds[1] = std::pow(s[2], e) - dim1 * s[1] / r;
    ds[2] = s[3];
    ds[3] = -std::pow(s[0], -q) - dim1 * s[3] / r;
  };
  auto accept = [&](double r, const std::array<double, 4>& s) {
    if (s[0] < u_floor) {
      tr.u_floor = true;
      tr.stop_r = r;
      return false;
    }
    if (stop_on_v_floor && s[2] < v_floor) {
      tr.v_floor = true;
      tr.stop_r = r;
      return false;
    }
    return true;
  };

  DormandPrince45<4> stepper(tol);
  double r = r1;
  double step = h;
  for (std::size_t i = 2; i < total; ++i) {
    const double target = grid.r(i);
    auto st = stepper.advance(rhs, r, y, target, step, accept);
    if (st != OdeStatus::reached) {
      tr.status = st;
      if (st != OdeStatus::stopped) tr.stop_r = r;
      return tr;
    }
    push(y);
  }
  return tr;
}

}  // namespace biharm
