#pragma once

// Coefficient algebra and admissibility region for the gradient estimate
// Delta u >= alpha |grad u|^2 / u + beta u^{-(q-1)/2}.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "biharm/errors.hpp"

namespace biharm {

/// Relative slack for the non-strict region inequalities.
inline constexpr double kRegionTol = 1e-12;

struct ParamSet {
  int n = 3;
  double q = 7.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> gamma;

  void validate() const {
    if (n < 3) throw DomainError("ParamSet: n must be >= 3");
    if (!(q > 1.0)) throw DomainError("ParamSet: q must be > 1");
    if (!(alpha >= 0.0) || !(beta >= 0.0)) throw DomainError("ParamSet: alpha, beta must be >= 0");
    if (gamma && !(*gamma >= 0.0 && *gamma < 1.0)) {
      throw DomainError("ParamSet: gamma must lie in [0,1)");
    }
  }
};

struct Coefficients {
  double I1, I2, I3;
  double K1, K2;
  double J1, J2, L1, L2;
  double p_half;  // (q-1)/2
};

inline Coefficients coefficients(const ParamSet& ps) {
  ps.validate();
  const double n = ps.n;
  const double q = ps.q;
  const double a = ps.alpha;
  const double b = ps.beta;
  const double g = ps.gamma.value_or(0.0);
  const double p = (q - 1.0) / 2.0;
  Coefficients c{};
  c.p_half = p;
  c.I1 = (2.0 / n) * (1.0 - 2.0 * a) * (1.0 - 2.0 * a) - 2.0 * a * a + a;
  c.I2 = 1.0 + (2.0 / n) * a * b * b - p * b * b;
  c.I3 = p * ((q + 1.0) / 2.0 - a) - a * (q - 8.0 * a / n + 4.0 / n);
  c.K1 = 1.0 + 4.0 * (1.0 - 2.0 * a) / n;
  c.K2 = p - 4.0 * a / n;
  c.J1 = 2.0 * a / n + g;
  c.J2 = a + g;
  c.L1 = c.K1 * a - 3.0 * g * a - g * g + g;
  c.L2 = (c.K2 - g) * b;
  return c;
}

/// Smallest q allowed by the region for a given alpha in (0, 1/2].
inline double q_min(double alpha, int n) {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw DomainError("q_min: alpha must lie in (0, 1/2]");
  const double a = alpha;
  return 3.0 * a + std::sqrt(9.0 * a * a + (1.0 - 2.0 * a) * (1.0 + 16.0 * a / n));
}

/// Largest beta allowed by the region: sqrt(2 / (q - 1 - 4 alpha / n)).
inline double beta_max(double alpha, double q, int n) {
  const double denom = q - 1.0 - 4.0 * alpha / n;
  if (!(denom > 0.0)) throw DomainError("beta_max: q - 1 - 4 alpha/n must be positive");
  return std::sqrt(2.0 / denom);
}

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline Sign sign_of(double x, double tol = kRegionTol) {
  if (x > tol) return Sign::positive;
  if (x < -tol) return Sign::negative;
  return Sign::zero;
}

struct AdmissibilityReport {
  bool admissible = false;
  std::vector<std::string> reasons;
  Coefficients coefficients{};
  Sign I1, I2, I3, K1, K2;
  /// I1, I2, I3 >= 0 and K1, K2 > 0 (what the region is meant to guarantee).
  bool coefficient_signs_ok = false;
};

namespace detail {

inline bool leq_tol(double x, double bound) {
  return x <= bound + kRegionTol * std::max(1.0, std::abs(bound));
}

}  // namespace detail

/// Evaluates each line of the region { alpha <= 1/2, beta <= beta_max, q >= q_min }.
inline AdmissibilityReport check_admissible(const ParamSet& ps) {
  AdmissibilityReport rep;
  if (ps.n < 3) rep.reasons.emplace_back("n >= 3 violated");
  if (!(ps.q > 1.0)) rep.reasons.emplace_back("q > 1 violated");
  if (!(ps.alpha >= 0.0)) rep.reasons.emplace_back("alpha >= 0 violated");
  if (!(ps.beta >= 0.0)) rep.reasons.emplace_back("beta >= 0 violated");
  if (!rep.reasons.empty()) return rep;

  if (!detail::leq_tol(ps.alpha, 0.5)) rep.reasons.emplace_back("alpha <= 1/2 violated");
  const double denom = ps.q - 1.0 - 4.0 * ps.alpha / ps.n;
  if (!(denom > 0.0)) {
    rep.reasons.emplace_back("beta <= beta_max violated (q - 1 - 4 alpha/n <= 0)");
  } else if (!detail::leq_tol(ps.beta, std::sqrt(2.0 / denom))) {
    rep.reasons.emplace_back("beta <= beta_max violated");
  }
  if (ps.alpha > 0.0 && ps.alpha <= 0.5) {
    if (!detail::leq_tol(q_min(ps.alpha, ps.n), ps.q)) rep.reasons.emplace_back("q >= q_min violated");
  }
  rep.admissible = rep.reasons.empty();

  ParamSet base = ps;
  base.gamma.reset();
  rep.coefficients = coefficients(base);
  const auto& c = rep.coefficients;
  rep.I1 = sign_of(c.I1);
  rep.I2 = sign_of(c.I2);
  rep.I3 = sign_of(c.I3);
  rep.K1 = sign_of(c.K1);
  rep.K2 = sign_of(c.K2);
  rep.coefficient_signs_ok = rep.I1 != Sign::negative && rep.I2 != Sign::negative &&
                             rep.I3 != Sign::negative && rep.K1 == Sign::positive &&
                             rep.K2 == Sign::positive;
  return rep;
}

/// Feasible gamma set [0, upper) of the weighted maximum-principle argument.
/// Membership is decided by the strict inequalities L1 > 0, K2 - gamma > 0,
/// gamma < 1 themselves, so boundary cases are excluded.
struct GammaInterval {
  double upper = 0.0;
  double alpha = 0.0, q = 1.0;
  int n = 3;

  bool empty() const { return !(upper > 0.0) || !contains_strict(0.5 * upper); }

  bool contains(double gamma) const {
    if (!(gamma >= 0.0 && gamma < upper)) return false;
    return contains_strict(gamma);
  }

 private:
  bool contains_strict(double g) const {
    const double a = alpha;
    const double l1 = a + 4.0 * a * (1.0 - 2.0 * a) / n - 3.0 * a * g - g * g + g;
    const double l2 = q - 1.0 - 8.0 * a / n - 2.0 * g;
    return l1 > kRegionTol && l2 > kRegionTol && g < 1.0;
  }
};

inline GammaInterval gamma_interval(double alpha, double q, int n) {
  GammaInterval gi;
  gi.alpha = alpha;
  gi.q = q;
  gi.n = n;
  // positive root of g^2 + (3a - 1) g - a - 4a(1-2a)/n
  const double b = 3.0 * alpha - 1.0;
  const double c = -alpha - 4.0 * alpha * (1.0 - 2.0 * alpha) / n;
  const double disc = b * b - 4.0 * c;
  const double root = disc >= 0.0 ? (-b + std::sqrt(disc)) / 2.0 : 0.0;
  const double second = (q - 1.0 - 8.0 * alpha / n) / 2.0;
  gi.upper = std::max(0.0, std::min({root, second, 1.0}));
  return gi;
}

/// Exponent of the growth hypothesis u = o(|x|^{2/(1-gamma)}).
inline double growth_exponent(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("growth_exponent: gamma must lie in [0,1)");
  return 2.0 / (1.0 - gamma);
}

/// Growth exponent for the alpha = 1/2 estimate: min{4, 4 / (3 + 4/n - q)_+}.
inline double tau(double q, int n) {
  if (!(q >= 3.0) || n < 3) throw DomainError("tau: requires q >= 3 and n >= 3");
  const double pos = std::max(0.0, 3.0 + 4.0 / n - q);
  if (pos == 0.0) return 4.0;
  return std::min(4.0, 4.0 / pos);
}

}  // namespace biharm
