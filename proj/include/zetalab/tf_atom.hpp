#pragma once

#include <span>
#include <vector>

#include "zetalab/density.hpp"
#include "zetalab/fit.hpp"
#include "zetalab/functionals.hpp"

namespace zetalab {

/// Universal Thomas-Fermi screening function phi(x) of the neutral atom:
/// phi'' = phi^{3/2} / sqrt(x), phi(0) = 1, phi(inf) = 0.
///
/// The solution is built from the large-x end. In w = x^3 phi, tau = ln x
/// the equation is autonomous, w'' - 7 w' + 12 w = w^{3/2}, and the neutral
/// atom is the trajectory leaving the fixed point w = 144 along its stable
/// direction. Integrating that trajectory towards small x is numerically
/// stable; the last stretch near the origin is integrated in u = sqrt(x),
/// where the equation is regular, and the scale invariance
/// phi(x) -> l^3 phi(l x) fixes phi(0) = 1.
class TFSolution {
 public:
  double phi(double x) const;
  double dphi(double x) const;
  double slope_origin() const noexcept { return slope_origin_; }
  /// Initial slope from bisection shooting, kept as a cross-check.
  double shooting_slope() const noexcept { return shooting_slope_; }

  /// Samples of phi on a log-spaced abscissa, for export and plotting.
  std::vector<double> sample_x(std::size_t n_points, double x_min, double x_max) const;

 private:
  friend TFSolution solve_universal_tf(double tolerance);

  // u = sqrt(x) table near the origin.
  double u_step_ = 0.0;
  std::vector<double> core_phi_;
  std::vector<double> core_dphi_;
  // tau = ln x table of w = x^3 phi and dw/dtau.
  double tau_start_ = 0.0;
  double tau_step_ = 0.0;
  std::vector<double> w_;
  std::vector<double> v_;
  double slope_origin_ = 0.0;
  double shooting_slope_ = 0.0;
};

/// Throws ParameterError unless tolerance > 0, SolverError when the shooting
/// bracket does not straddle the solution or the two routes to the initial
/// slope disagree.
TFSolution solve_universal_tf(double tolerance = 1e-12);

/// Bisection on phi'(0): trajectories that cross zero had too steep a
/// slope, trajectories that turn upward too shallow. Throws SolverError
/// (reporting the bracket) when lo and hi are not classified differently.
double shoot_initial_slope(double tolerance, double lo = -1.7, double hi = -1.5);

/// TF length unit b = (1/2)(3 pi / 4)^{2/3} Z^{-1/3} in bohr.
double tf_length_scale(double Z);

/// Exponential grid with r_min = 1e-6 / Z and r_max = 1e4 b.
RadialGrid tf_default_grid(double Z);

/// n(r) = (2 Z phi(r/b) / r)^{3/2} / (3 pi^2). Throws ParameterError for Z <= 0.
RadialDensity tf_density(const TFSolution& sol, double Z);
RadialDensity tf_density(const TFSolution& sol, double Z, const RadialGrid& grid);

struct TFEnergy {
  double kinetic = 0.0;
  double nuclear = 0.0;
  double hartree = 0.0;
  double total = 0.0;          // kinetic + nuclear + hartree
  double slope_formula = 0.0;  // (3/7) Z^2 phi'(0) / b
};

TFEnergy tf_energy_components(const TFSolution& sol, double Z);

/// Total TF energy assembled from the TF density. Throws SolverError if it
/// differs from the slope formula by more than 0.2%.
double tf_total_energy(const TFSolution& sol, double Z);

/// LDA exchange evaluated on the TF density.
double lda_x_on_tf(const TFSolution& sol, double Z);

inline constexpr std::size_t kMaxCorrectionTerms = 5;

/// Fits E_C[n_zeta^TF] = A_C zeta ln zeta + B_C zeta over zeta_list, where
/// n_zeta^TF is the zeta-scaled Z = 1 TF density (equal to the TF density of
/// Z = zeta). The leading pair converges slowly, so up to five subleading
/// terms c1..c5 (zeta^{-2/3} ln zeta, zeta^{-2/3}, 1/zeta, ln zeta / zeta,
/// zeta^{-4/3}, all times zeta) are fitted alongside. functional must be lda_c
/// or pbe_c; the list needs at least max(8, terms + 4) points spanning two
/// decades (FitError otherwise).
AsymptoticFit correlation_asymptotics(const TFSolution& sol, FunctionalId functional,
                                      std::span<const double> zeta_list,
                                      std::size_t correction_terms = kMaxCorrectionTerms);

struct CorrelationLimit {
  double a_c = 0.0;
  double b_c = 0.0;
};

/// The zeta -> infinity limit of the same expansion in closed form: the
/// high-density PW92 limit A ln r_s - c gives A_C = -(2/3) A and
/// B_C = A <ln r_s> - c over the Z = 1 TF density; PBE adds
/// gamma <ln(1 + beta t^2 / gamma)>.
CorrelationLimit correlation_high_density_limit(const TFSolution& sol, FunctionalId functional);

/// log-spaced list of n values from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

}  // namespace zetalab
