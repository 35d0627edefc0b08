#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zetalab {

enum class GridKind { exponential, linear };

std::string_view to_string(GridKind kind);
GridKind grid_kind_from_string(std::string_view name);

/// Radial mesh on [r_min, r_max] with quadrature weights.
///
/// Exponential grids are uniform in x = ln r, linear grids uniform in r.
/// Integration uses the trapezoid rule in the uniform coordinate with
/// fourth-order end corrections, which is spectrally accurate for integrands
/// that decay at both ends of an exponential grid. Differentiation uses
/// 9-point finite-difference stencils in the uniform coordinate (one-sided
/// near the ends).
///
/// Grids are immutable after construction.
class RadialGrid {
 public:
  RadialGrid(GridKind kind, double r_min, double r_max, std::size_t n_points);

  GridKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return r_.size(); }
  double r_min() const noexcept { return r_min_; }
  double r_max() const noexcept { return r_max_; }
  /// Spacing of the uniform coordinate (ln r or r).
  double step() const noexcept { return h_; }

  std::span<const double> r() const noexcept { return r_; }
  std::span<const double> weights() const noexcept { return w_; }
  double r(std::size_t i) const { return r_[i]; }

  /// Approximates the integral of f from 0 to r_max.
  ///
  /// Returns sum(w_i f_i) plus the contribution of [0, r_min], estimated by
  /// fitting f ~ c r^p to the two innermost samples (needed for integrable
  /// singular integrands such as the Thomas-Fermi density). Throws
  /// ShapeError when f.size() != size().
  double integrate(std::span<const double> f) const;

  /// Running integral F_i = int_0^{r_i} f dr (fourth order in the spacing).
  std::vector<double> cumulative(std::span<const double> f) const;

  /// Integral of f over [a, b], clamped to the grid; endpoints need not be
  /// grid points.
  double integrate_range(std::span<const double> f, double a, double b) const;

  /// First or second derivative with respect to r. Throws ParameterError
  /// for any other order.
  std::vector<double> differentiate(std::span<const double> f, int order) const;

  /// Local 6-point Lagrange interpolation in the uniform coordinate.
  /// Values outside [r_min, r_max] are clamped to the end samples.
  double interpolate(std::span<const double> f, double radius) const;

  /// Same kind and point count with both bounds multiplied by factor. For
  /// exponential grids the new radii are exactly factor * r_i.
  RadialGrid scaled(double factor) const;

  /// Index of the last grid point with r_i <= radius (0 if radius < r_min).
  std::size_t locate(double radius) const;

  bool same_layout(const RadialGrid& other) const;

 private:
  double coordinate(double radius) const;

  GridKind kind_;
  double r_min_;
  double r_max_;
  double h_;
  std::vector<double> r_;
  std::vector<double> w_;
};

RadialGrid make_grid(GridKind kind, double r_min, double r_max, std::size_t n_points);

/// Default atomic grid: exponential, r_min = 1e-6 / Z, r_max = 50 bohr,
/// 1200 points.
RadialGrid default_grid(double Z = 1.0);

}  // namespace zetalab
