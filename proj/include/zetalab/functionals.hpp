#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "zetalab/density.hpp"

namespace zetalab {

enum class FunctionalId { tf, vw9, gea4, lda_x, gea_x, pbe_x, b88_x, lda_c, gea_c, pbe_c };

inline constexpr std::array<FunctionalId, 10> kAllFunctionals{
    FunctionalId::tf,    FunctionalId::vw9,   FunctionalId::gea4,  FunctionalId::lda_x,
    FunctionalId::gea_x, FunctionalId::pbe_x, FunctionalId::b88_x, FunctionalId::lda_c,
    FunctionalId::gea_c, FunctionalId::pbe_c};

std::string_view to_string(FunctionalId id);

/// Parses one of tf, vw9, gea4, lda_x, gea_x, pbe_x, b88_x, lda_c, gea_c,
/// pbe_c. Throws ParameterError listing the valid ids otherwise.
FunctionalId functional_from_string(std::string_view name);

std::string valid_functional_ids();

bool is_exchange(FunctionalId id);

// Gradient coefficients.
inline constexpr double kMuGea = 10.0 / 81.0;
inline constexpr double kPbeKappa = 0.804;
inline constexpr double kPbeMu = 0.21951;
inline constexpr double kBetaMB = 0.066725;
inline constexpr double kB88BetaFitted = 0.0042;

/// beta = 5 / (108 (6 pi^5)^{1/3}): the B88 coefficient for which the
/// gradient and cusp parts of the large-Z exchange correction are equal.
double b88_theoretical_beta();

struct FunctionalOptions {
  double b88_beta = kB88BetaFitted;
};

struct FunctionalResult {
  FunctionalId id = FunctionalId::lda_x;
  double energy = 0.0;                       // hartree
  std::vector<double> radial_energy_density;  // 4 pi r^2 e(r), hartree / bohr
  std::vector<std::string> warnings;
};

FunctionalResult tf_kinetic(const RadialDensity& d);
FunctionalResult vw_gradient_kinetic(const RadialDensity& d);
/// Fourth-order gradient correction to the kinetic energy,
/// tau_TF (8/81 q^2 - 1/9 s^2 q + 8/243 s^4). Only meaningful for cusp-free
/// densities; a warning is attached when a nuclear cusp is detected.
FunctionalResult gea4_kinetic(const RadialDensity& d);
FunctionalResult lda_exchange(const RadialDensity& d);
FunctionalResult gea_exchange(const RadialDensity& d);
FunctionalResult pbe_exchange(const RadialDensity& d);
/// Spin-unpolarized B88 with n_up = n_down = n / 2. Throws ParameterError
/// unless beta > 0.
FunctionalResult b88_exchange(const RadialDensity& d, double beta = kB88BetaFitted);
/// PW92 uniform-gas correlation.
FunctionalResult lda_correlation(const RadialDensity& d);
/// LDA correlation plus n beta_MB t^2.
FunctionalResult gea_correlation(const RadialDensity& d);
FunctionalResult pbe_correlation(const RadialDensity& d);

FunctionalResult evaluate(FunctionalId id, const RadialDensity& d,
                          const FunctionalOptions& options = {});

/// 4 pi r^2 (e_x - e_x^LDA) for an exchange functional. Throws
/// ParameterError for non-exchange ids.
std::vector<double> exchange_energy_density_difference(const RadialDensity& d, FunctionalId id,
                                                       const FunctionalOptions& options = {});

/// True when the density has a nuclear cusp at the origin, judged from
/// |n'|/n staying finite (rather than vanishing like r) at the innermost
/// grid points.
bool has_cusp(const RadialDensity& d);

namespace xc {

struct CorrelationPoint {
  double eps = 0.0;      // energy per electron
  double deps_drs = 0.0;
};

/// PW92 spin-unpolarized correlation energy per electron.
CorrelationPoint pw92(double rs);

double wigner_seitz_radius(double n);

/// LDA exchange energy per volume.
double lda_exchange_density(double n);

/// Spin-unpolarized LDA exchange-correlation potential (PW92 correlation).
double lda_xc_potential(double n);

double pbe_enhancement(double s);

/// PBE gradient correction per electron for the unpolarized gas.
double pbe_h(double eps_c, double t);

}  // namespace xc

}  // namespace zetalab
