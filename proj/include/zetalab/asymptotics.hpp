#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "zetalab/density.hpp"
#include "zetalab/fit.hpp"
#include "zetalab/functionals.hpp"

namespace zetalab {

/// Leading TF exchange coefficient, E_x ~ -0.2208 Z^{5/3}.
inline constexpr double kTFExchangeCoefficient = 0.2208;

struct ExchangePoint {
  double Z = 0.0;
  double e_x = 0.0;
  double e_x_lda = 0.0;
};

/// Fits (E_x - E_x^LDA) / Z as a polynomial of the given order in Z^{-1/3}.
/// The constant term is reported as "Delta_C", higher terms as "a1", "a2"...
/// Throws FitError with fewer than order + 2 points.
///
/// Default: a straight line through He..Rn. A quadratic bends the same data
/// 10-25% lower and is sensitive to the shell structure of the heavy atoms.
AsymptoticFit fit_delta_c(std::span<const ExchangePoint> points, int order = 1);

/// Fits (E_x^LDA + 0.2208 Z^{5/3}) / Z the same way; the intercept is
/// "C_LDA". Shell structure makes this fit poor, so a notice carries the
/// residual spread as the uncertainty of the intercept.
AsymptoticFit fit_c_lda(std::span<const ExchangePoint> points, int order = 1);

/// Parameters of n(r) = a exp(-b r).
struct ExponentialParams {
  double a = 1.0;
  double b = 1.0;
};

/// Recovers a and b from samples; throws ParameterError unless ln n is
/// linear in r to 1e-8 relative wherever the density is above the floor.
ExponentialParams exponential_params(const RadialDensity& d);

enum class Region { cusp, bulk, evanescent };
std::string_view to_string(Region region);
Region region_from_string(std::string_view name);

struct RegionReport {
  double zeta = 1.0;
  double threshold = 1.0;
  ExponentialParams scaled;         // parameters of the zeta-scaled density
  std::optional<double> r_c;        // |q/s| > threshold for r < r_c
  std::optional<double> r_e;        // s > threshold and |q/s| > threshold beyond r_e
  std::optional<double> r_s;        // s > threshold beyond r_s (s condition alone)
  std::optional<double> r_tau;      // tau' < 0 beyond r_tau (needs orbitals)
  std::vector<std::pair<std::string, double>> contributions;  // "functional/region" -> hartree
};

/// Region radii of the zeta-scaled exponential density, found by bracketed
/// root search on the closed forms s(r) = b / (2 k_F) and
/// q/s = (b - 2/r) / (2 k_F). Radii that do not exist are left empty.
RegionReport region_radii(const RadialDensity& d, double zeta, double threshold = 1.0);

/// Outermost radius beyond which tau' < 0, if the density carries tau'.
std::optional<double> tau_prime_evanescent_radius(const RadialDensity& d);

struct RegionScaling {
  AsymptoticFit cusp;        // ln r_c = p ln zeta + c
  AsymptoticFit evanescent;  // ln r_e = p ln zeta + a ln ln zeta + c
  std::vector<double> zeta;
  std::vector<double> re_ratio;  // r_e zeta^{1/3} / ln zeta
  /// (max - min) / mean of re_ratio over the top decade of zeta.
  double re_ratio_variation = 0.0;
};

/// Throws FitError unless zeta_list spans at least three decades.
RegionScaling region_scaling_exponents(const RadialDensity& d, std::span<const double> zeta_list,
                                       double threshold = 1.0);

/// Integral of a functional's energy density over one region of the
/// zeta-scaled density.
double region_energy(const RadialDensity& d, double zeta, FunctionalId functional, Region region,
                     double threshold = 1.0);

/// Fits ln|E_region| = p ln zeta + a ln ln zeta + c and reports p. functional
/// must be tf, vw9, lda_x or gea_x. zeta values where the region is empty
/// are skipped with a notice.
AsymptoticFit region_contributions(const RadialDensity& d, std::span<const double> zeta_list,
                                   FunctionalId functional, Region region,
                                   double threshold = 1.0);

/// 13 log-spaced values from 1e3 to 1e9.
std::vector<double> default_region_zetas();

nlohmann::json to_json(const RegionReport& report);

}  // namespace zetalab
