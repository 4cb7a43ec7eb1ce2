#pragma once

// Uniform radial grids on [0, R] and second-order finite-difference operators
// for radially symmetric functions in R^n.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "biharm/errors.hpp"

namespace biharm {

/// Uniform nodes r_i = i*h, i = 0..N, carrying the ambient dimension n.
class RadialGrid {
 public:
  static constexpr std::size_t kMinIntervals = 16;

  RadialGrid(int dimension, double r_max, std::size_t intervals)
      : RadialGrid(dimension, r_max / static_cast<double>(intervals), intervals, 0) {
    if (!(r_max > 0.0) || !std::isfinite(r_max)) {
      throw DomainError("RadialGrid: r_max must be positive and finite");
    }
  }

  static RadialGrid with_spacing(int dimension, double h, std::size_t intervals) {
    return RadialGrid(dimension, h, intervals, 0);
  }

  int dimension() const { return dimension_; }
  double spacing() const { return h_; }
  std::size_t intervals() const { return intervals_; }
  std::size_t size() const { return intervals_ + 1; }
  double r(std::size_t i) const { return static_cast<double>(i) * h_; }
  double r_max() const { return r(intervals_); }

  std::vector<double> nodes() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = r(i);
    return out;
  }

  /// Image of the grid under x -> lambda x.
  RadialGrid rescaled(double lambda) const {
    if (!(lambda > 0.0)) throw DomainError("RadialGrid::rescaled: lambda must be positive");
    return with_spacing(dimension_, lambda * h_, intervals_);
  }

  /// Prefix grid r_0..r_k.
  RadialGrid truncated(std::size_t k) const { return with_spacing(dimension_, h_, k); }

  /// Same window with 2^levels times as many intervals.
  RadialGrid refined(int levels = 1) const {
    std::size_t factor = std::size_t{1} << levels;
    return with_spacing(dimension_, h_ / static_cast<double>(factor), intervals_ * factor);
  }

  /// Nodes farther than `margin_cells`*h from both window ends.
  std::pair<std::size_t, std::size_t> trimmed_range(std::size_t margin_cells = 4) const {
    return {margin_cells, intervals_ - margin_cells};
  }

  friend bool operator==(const RadialGrid& a, const RadialGrid& b) {
    return a.dimension_ == b.dimension_ && a.h_ == b.h_ && a.intervals_ == b.intervals_;
  }

 private:
  RadialGrid(int dimension, double h, std::size_t intervals, int)
      : dimension_(dimension), h_(h), intervals_(intervals) {
    if (dimension < 3) throw DomainError("RadialGrid: dimension must be >= 3");
    if (intervals < kMinIntervals) throw SizeError("RadialGrid: need at least 16 intervals");
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("RadialGrid: spacing must be positive");
  }

  int dimension_;
  double h_;
  std::size_t intervals_;
};

/// Nodal values of a scalar function on a RadialGrid (or any 1-D node set).
class Field {
 public:
  Field() = default;

  explicit Field(std::vector<double> values, bool positive = false)
      : values_(std::move(values)), positive_(positive) {
    for (double v : values_) {
      if (!std::isfinite(v)) throw DomainError("Field: non-finite value");
      if (positive_ && !(v > 0.0)) throw DomainError("Field: positivity flag set but value <= 0");
    }
  }

  template <class F>
  static Field sample(const RadialGrid& grid, F&& f, bool positive = false) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.r(i));
    return Field(std::move(v), positive);
  }

  std::span<const double> values() const { return values_; }
  const std::vector<double>& data() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool positive() const { return positive_; }

 private:
  std::vector<double> values_;
  bool positive_ = false;
};

namespace detail {

inline void require_aligned(std::span<const double> f, const RadialGrid& grid) {
  if (f.size() != grid.size()) throw SizeError("field size does not match grid");
  if (grid.intervals() < 4) throw SizeError("stencil needs at least 4 intervals");
}

}  // namespace detail

/// f'(r): central in the interior, f'(0) = 0 (even extension), one-sided
/// second order at r_N.
inline std::vector<double> radial_derivative(std::span<const double> f, const RadialGrid& grid) {
  detail::require_aligned(f, grid);
  const std::size_t n = grid.intervals();
  const double h = grid.spacing();
  std::vector<double> d(f.size());
  d[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  d[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * h);
  return d;
}

/// Derivative of an odd function (such as g = f' of a radial f): central in the
/// interior, g'(0) = g_1 / h from the odd extension g(-r) = -g(r).
inline std::vector<double> odd_derivative(std::span<const double> g, const RadialGrid& grid) {
  detail::require_aligned(g, grid);
  const std::size_t n = grid.intervals();
  const double h = grid.spacing();
  std::vector<double> d(g.size());
  d[0] = g[1] / h;
  for (std::size_t i = 1; i < n; ++i) d[i] = (g[i + 1] - g[i - 1]) / (2.0 * h);
  d[n] = (3.0 * g[n] - 4.0 * g[n - 1] + g[n - 2]) / (2.0 * h);
  return d;
}

/// Delta f = f'' + (n-1) f'/r. At r = 0 the even extension gives
/// Delta f(0) = n f''(0) = 2n (f_1 - f_0)/h^2; at r_N a one-sided second-order stencil.
inline std::vector<double> radial_laplacian(std::span<const double> f, const RadialGrid& grid) {
  detail::require_aligned(f, grid);
  const std::size_t n = grid.intervals();
  const double h = grid.spacing();
  const double h2 = h * h;
  const double dim1 = grid.dimension() - 1.0;
  std::vector<double> lap(f.size());
  lap[0] = grid.dimension() * 2.0 * (f[1] - f[0]) / h2;
  for (std::size_t i = 1; i < n; ++i) {
    const double d2 = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    const double d1 = (f[i + 1] - f[i - 1]) / (2.0 * h);
    lap[i] = d2 + dim1 * d1 / grid.r(i);
  }
  const double d2 = (2.0 * f[n] - 5.0 * f[n - 1] + 4.0 * f[n - 2] - f[n - 3]) / h2;
  const double d1 = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * h);
  lap[n] = d2 + dim1 * d1 / grid.r(n);
  return lap;
}

inline Field radial_laplacian(const Field& f, const RadialGrid& grid) {
  return Field(radial_laplacian(f.values(), grid));
}

/// |grad f|^2 = (f')^2 for radial f; zero at the origin.
inline std::vector<double> radial_gradient_sq(std::span<const double> f, const RadialGrid& grid) {
  auto d = radial_derivative(f, grid);
  for (double& x : d) x *= x;
  return d;
}

inline Field radial_gradient_sq(const Field& f, const RadialGrid& grid) {
  return Field(radial_gradient_sq(f.values(), grid));
}

/// Laplacian of a radial function given its first derivative g = f':
/// Delta f = g' + (n-1) g / r, with Delta f(0) = n g'(0).
inline std::vector<double> laplacian_from_derivative(std::span<const double> g,
                                                     const RadialGrid& grid) {
  auto lap = odd_derivative(g, grid);
  lap[0] *= grid.dimension();
  const double dim1 = grid.dimension() - 1.0;
  for (std::size_t i = 1; i < lap.size(); ++i) lap[i] += dim1 * g[i] / grid.r(i);
  return lap;
}

}  // namespace biharm
