#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta pair with adaptive step size.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace biharm {

struct OdeTolerances {
  double rtol = 1e-11;
  double atol = 1e-13;
  /// Step-size floor relative to max(1, |t|); below it the integrator gives up.
  double min_step_rel = 1e-13;
};

enum class OdeStatus { reached, stopped, underflow, nonfinite };

template <std::size_t D>
class DormandPrince45 {
 public:
  using State = std::array<double, D>;

  explicit DormandPrince45(OdeTolerances tol = {}) : tol_(tol) {}

  /// Advances (t, y) to t_end. `step` carries the suggested step size across
  /// calls. `accept(t, y)` is consulted after every accepted step; returning
  /// false stops the integration there with OdeStatus::stopped.
  template <class Rhs, class Accept>
  OdeStatus advance(Rhs&& rhs, double& t, State& y, double t_end, double& step, Accept&& accept) const {
    if (step <= 0.0) step = (t_end - t);
    while (t < t_end) {
      const double floor = tol_.min_step_rel * std::max(1.0, std::abs(t));
      double h = std::min(step, t_end - t);
      const bool last = (h == t_end - t);
      State y_new;
      const double err = attempt(rhs, t, y, h, y_new);
      if (!std::isfinite(err)) {
        step = 0.5 * h;
        if (step < floor) return OdeStatus::nonfinite;
        continue;
      }
      if (err <= 1.0) {
        t = last ? t_end : t + h;
        y = y_new;
        const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        // a truncated final step should not shrink the carried step size
        step = last ? std::max(step, h * grow) : h * grow;
        if (!accept(t, y)) return OdeStatus::stopped;
      } else {
        step = h * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
        if (step < floor) return OdeStatus::underflow;
      }
    }
    return OdeStatus::reached;
  }

  template <class Rhs>
  OdeStatus advance(Rhs&& rhs, double& t, State& y, double t_end, double& step) const {
    return advance(rhs, t, y, t_end, step, [](double, const State&) { return true; });
  }

 private:
  template <class Rhs>
  double attempt(Rhs& rhs, double t, const State& y, double h, State& y_new) const {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    State k1, k2, k3, k4, k5, k6, k7, tmp;
    rhs(t, y, k1);
    for (std::size_t i = 0; i < D; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < D; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < D; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < D; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < D; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, tmp, k6);
    for (std::size_t i = 0; i < D; ++i)
      y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, y_new, k7);

    double acc = 0.0;
    for (std::size_t i = 0; i < D; ++i) {
      const double e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = tol_.atol + tol_.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      acc += (e / sc) * (e / sc);
      if (!std::isfinite(y_new[i])) return std::numeric_limits<double>::infinity();
    }
    return std::sqrt(acc / static_cast<double>(D));
  }

  OdeTolerances tol_;
};

}  // namespace biharm
