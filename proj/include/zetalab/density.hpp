#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "zetalab/radial_grid.hpp"

namespace zetalab {

/// Densities below this value (bohr^-3) are treated as vacuum: reduced
/// gradients are masked there and gradient terms of functionals vanish.
inline constexpr double kDensityFloor = 1e-30;

/// Spherical electron density n(r) with its radial derivatives.
///
/// Optional kinetic-energy densities are attached by the atomic solver:
/// tau = sum_i |grad psi_i|^2 / 2 (non-negative) and
/// tau_prime = sum_i psi_i^* (-laplacian / 2) psi_i.
class RadialDensity {
 public:
  /// Builds a density from samples; derivatives come from the grid's
  /// finite-difference stencils. Throws ShapeError on length mismatch and
  /// DomainError on negative or non-finite samples.
  static RadialDensity from_samples(RadialGrid grid, std::vector<double> n);

  const RadialGrid& grid() const noexcept { return grid_; }
  std::span<const double> n() const noexcept { return n_; }
  std::span<const double> dn() const noexcept { return dn_; }
  std::span<const double> d2n() const noexcept { return d2n_; }
  double n_electrons() const noexcept { return n_electrons_; }

  const std::optional<std::vector<double>>& tau() const noexcept { return tau_; }
  const std::optional<std::vector<double>>& tau_prime() const noexcept { return tau_prime_; }

  /// Copy carrying kinetic-energy densities. Throws DomainError if tau < 0.
  RadialDensity with_kinetic_densities(std::vector<double> tau,
                                       std::vector<double> tau_prime) const;

  /// Spherical Laplacian d2n + 2 dn / r.
  std::vector<double> laplacian() const;

  /// 4 pi r^2 n(r), the radial electron distribution.
  std::vector<double> radial_distribution() const;

 private:
  RadialDensity(RadialGrid grid, std::vector<double> n);

  RadialGrid grid_;
  std::vector<double> n_;
  std::vector<double> dn_;
  std::vector<double> d2n_;
  double n_electrons_ = 0.0;
  std::optional<std::vector<double>> tau_;
  std::optional<std::vector<double>> tau_prime_;
};

RadialDensity from_samples(RadialGrid grid, std::vector<double> n);

/// Dimensionless gradients on the Fermi scale (s, q) and on the screening
/// scale (t). Entries where n < kDensityFloor have valid[i] == 0 and zero
/// values.
struct ReducedGradients {
  std::vector<double> s;
  std::vector<double> q;
  std::vector<double> t;
  std::vector<double> k_F;
  std::vector<double> k_s;
  std::vector<char> valid;
};

/// s = |n'| / (2 k_F n), q = lap n / (4 k_F^2 n), t = |n'| / (2 k_s n) with
/// k_F = (3 pi^2 n)^{1/3}, k_s = sqrt(4 k_F / pi). Throws DomainError if the
/// density is zero (below the floor) everywhere.
ReducedGradients reduced_gradients(const RadialDensity& d);

/// n_zeta(r) = zeta^2 n(zeta^{1/3} r) on the source grid scaled by
/// zeta^{-1/3}. Every node of the new grid maps onto a source node, so no
/// interpolation error enters. Kinetic-energy densities are not carried
/// over. Throws ParameterError unless zeta > 0.
RadialDensity zeta_scale(const RadialDensity& d, double zeta);

/// As above but resampled onto an arbitrary target grid.
RadialDensity zeta_scale(const RadialDensity& d, double zeta, const RadialGrid& target);

/// Interpolates the density onto another grid (6-point Lagrange in ln n
/// where the density is above the floor, in n elsewhere). Radii below the
/// source grid take the innermost sample, radii beyond it get zero.
RadialDensity resample(const RadialDensity& d, const RadialGrid& target);

struct ScalingLawReport {
  double zeta = 1.0;
  double electron_number_rel = 0.0;  // |N_zeta - zeta N| / (zeta N)
  double s_law_abs = 0.0;            // max |s_zeta(r) - s(zeta^{1/3} r) / zeta^{1/3}|
  double q_law_abs = 0.0;            // max |q_zeta(r) - q(zeta^{1/3} r) / zeta^{2/3}|
  double t_law_abs = 0.0;            // max |t_zeta(r) - t(zeta^{1/3} r)|
  double s_law_rel = 0.0;
  double q_law_rel = 0.0;
  double t_law_rel = 0.0;
  double mixed = 0.0;  // max |diff| / max(1, |reference|) over s, q and t
  std::size_t compared_points = 0;

  double max_abs() const;
  /// Worst of the electron-number error and the mixed gradient-law error:
  /// absolute where the gradients are O(1), relative in the far tail where
  /// s and q grow without bound.
  double max_deviation() const;
};

/// Checks the scaling laws of s, q and t under zeta-scaling, evaluating the
/// scaled density's gradients independently on its own grid.
ScalingLawReport verify_scaling_laws(const RadialDensity& d, double zeta);

/// Density CSV: '#'-prefixed header carrying kind, r_min, r_max, n_points,
/// n_electrons, a "r,n" column line, then one "r,n" row per grid point.
void save_density(const RadialDensity& d, const std::filesystem::path& path);

/// Throws FormatError (with the offending line number) on malformed headers,
/// non-monotone radii, negative densities, or radii that disagree with the
/// declared grid.
RadialDensity load_density(const std::filesystem::path& path);

}  // namespace zetalab
