#include "zetalab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

constexpr double kPi = std::numbers::pi;
const double kCx = 0.75 * std::cbrt(3.0 / kPi);
const double kCtf = 0.3 * std::pow(3.0 * kPi * kPi, 2.0 / 3.0);

// PW92, spin-unpolarized parameters.
constexpr double kA = 0.031091;
constexpr double kAlpha1 = 0.21370;
constexpr double kBeta1 = 7.5957;
constexpr double kBeta2 = 3.5876;
constexpr double kBeta3 = 1.6382;
constexpr double kBeta4 = 0.49294;

const double kGamma = (1.0 - std::numbers::ln2) / (kPi * kPi);

struct Builder {
  const RadialDensity& d;
  FunctionalId id;
  std::vector<double> red;

  Builder(const RadialDensity& density, FunctionalId fid)
      : d(density), id(fid), red(density.n().size(), 0.0) {}

  // e is an energy per volume at grid point i.
  void set(std::size_t i, double e) {
    const double r = d.grid().r(i);
    red[i] = 4.0 * kPi * r * r * e;
  }

  FunctionalResult finish(std::vector<std::string> warnings = {}) {
    FunctionalResult res;
    res.id = id;
    res.energy = d.grid().integrate(red);
    res.radial_energy_density = std::move(red);
    res.warnings = std::move(warnings);
    return res;
  }
};

// Gradient quantities at a point, or nullopt below the density floor.
struct Local {
  double n;
  double grad;  // |dn/dr|
  double lap;
  bool above_floor;
};

Local local(const RadialDensity& d, std::size_t i) {
  const double n = d.n()[i];
  const double r = d.grid().r(i);
  return {n, std::abs(d.dn()[i]), d.d2n()[i] + 2.0 * d.dn()[i] / r, n >= kDensityFloor};
}

double s_of(const Local& p) {
  const double kf = std::cbrt(3.0 * kPi * kPi * p.n);
  return p.grad / (2.0 * kf * p.n);
}

double t_of(const Local& p) {
  const double kf = std::cbrt(3.0 * kPi * kPi * p.n);
  const double ks = std::sqrt(4.0 * kf / kPi);
  return p.grad / (2.0 * ks * p.n);
}

double lda_c_density(double n) {
  if (n <= 0.0) return 0.0;
  return n * xc::pw92(xc::wigner_seitz_radius(n)).eps;
}

double b88_density(const Local& p, double beta) {
  const double lda = xc::lda_exchange_density(p.n);
  if (!p.above_floor) return lda;
  const double n43 = std::pow(p.n, 4.0 / 3.0);
  // Per-spin reduced gradient for n_sigma = n/2.
  const double x_sigma = std::cbrt(2.0) * p.grad / n43;
  const double correction =
      beta * n43 / std::cbrt(2.0) * x_sigma * x_sigma /
      (1.0 + 6.0 * beta * x_sigma * std::asinh(x_sigma));
  return lda - correction;
}

double exchange_density(FunctionalId id, const Local& p, const FunctionalOptions& options) {
  const double lda = xc::lda_exchange_density(p.n);
  switch (id) {
    case FunctionalId::lda_x:
      return lda;
    case FunctionalId::gea_x: {
      if (!p.above_floor) return lda;
      const double s = s_of(p);
      return lda * (1.0 + kMuGea * s * s);
    }
    case FunctionalId::pbe_x:
      return p.above_floor ? lda * xc::pbe_enhancement(s_of(p)) : lda;
    case FunctionalId::b88_x:
      return b88_density(p, options.b88_beta);
    default:
      throw ParameterError("functional '" + std::string(to_string(id)) +
                           "' has no exchange energy density");
  }
}

FunctionalResult exchange(const RadialDensity& d, FunctionalId id,
                          const FunctionalOptions& options) {
  Builder b(d, id);
  for (std::size_t i = 0; i < b.red.size(); ++i) {
    b.set(i, exchange_density(id, local(d, i), options));
  }
  return b.finish();
}

}  // namespace

std::string_view to_string(FunctionalId id) {
  switch (id) {
    case FunctionalId::tf: return "tf";
    case FunctionalId::vw9: return "vw9";
    case FunctionalId::gea4: return "gea4";
    case FunctionalId::lda_x: return "lda_x";
    case FunctionalId::gea_x: return "gea_x";
    case FunctionalId::pbe_x: return "pbe_x";
    case FunctionalId::b88_x: return "b88_x";
    case FunctionalId::lda_c: return "lda_c";
    case FunctionalId::gea_c: return "gea_c";
    case FunctionalId::pbe_c: return "pbe_c";
  }
  return "?";
}

std::string valid_functional_ids() {
  std::string out;
  for (auto id : kAllFunctionals) {
    if (!out.empty()) out += ", ";
    out += to_string(id);
  }
  return out;
}

FunctionalId functional_from_string(std::string_view name) {
  for (auto id : kAllFunctionals) {
    if (to_string(id) == name) return id;
  }
  throw ParameterError("unknown functional '" + std::string(name) +
                       "'; valid ids: " + valid_functional_ids());
}

bool is_exchange(FunctionalId id) {
  return id == FunctionalId::lda_x || id == FunctionalId::gea_x || id == FunctionalId::pbe_x ||
         id == FunctionalId::b88_x;
}

double b88_theoretical_beta() {
  return 5.0 / (108.0 * std::cbrt(6.0 * std::pow(kPi, 5)));
}

bool has_cusp(const RadialDensity& d) {
  // For analytic densities n'/n ~ r near the origin, for cusped ones it
  // tends to a constant. Compare two inner points a decade apart.
  const auto& g = d.grid();
  if (g.size() < 16) return false;
  const std::size_t i0 = 2;
  const std::size_t i1 = std::min(g.locate(10.0 * g.r(i0)), g.size() / 4);
  if (i1 <= i0) return false;
  const double n0 = d.n()[i0];
  const double n1 = d.n()[i1];
  if (n0 < kDensityFloor || n1 < kDensityFloor) return false;
  const double a0 = std::abs(d.dn()[i0]) / n0;
  const double a1 = std::abs(d.dn()[i1]) / n1;
  if (a1 == 0.0) return false;
  if (a0 == 0.0) return false;
  const double slope = std::log(a1 / a0) / std::log(g.r(i1) / g.r(i0));
  return slope < 0.5;
}

FunctionalResult tf_kinetic(const RadialDensity& d) {
  Builder b(d, FunctionalId::tf);
  for (std::size_t i = 0; i < b.red.size(); ++i) {
    b.set(i, kCtf * std::pow(d.n()[i], 5.0 / 3.0));
  }
  return b.finish();
}

FunctionalResult vw_gradient_kinetic(const RadialDensity& d) {
  Builder b(d, FunctionalId::vw9);
  for (std::size_t i = 0; i < b.red.size(); ++i) {
    const Local p = local(d, i);
    b.set(i, p.above_floor ? p.grad * p.grad / (72.0 * p.n) : 0.0);
  }
  return b.finish();
}

FunctionalResult gea4_kinetic(const RadialDensity& d) {
  Builder b(d, FunctionalId::gea4);
  for (std::size_t i = 0; i < b.red.size(); ++i) {
    const Local p = local(d, i);
    if (!p.above_floor) continue;
    const double kf = std::cbrt(3.0 * kPi * kPi * p.n);
    const double s = s_of(p);
    const double q = p.lap / (4.0 * kf * kf * p.n);
    const double tau_tf = kCtf * std::pow(p.n, 5.0 / 3.0);
    b.set(i, tau_tf * (8.0 / 81.0 * q * q - s * s * q / 9.0 + 8.0 / 243.0 * s * s * s * s));
  }
  std::vector<std::string> warnings;
  if (has_cusp(d)) {
    warnings.emplace_back(
        "gea4: density has a nuclear cusp; the fourth-order term is not valid there");
  }
  return b.finish(std::move(warnings));
}

FunctionalResult lda_exchange(const RadialDensity& d) {
  return exchange(d, FunctionalId::lda_x, {});
}

FunctionalResult gea_exchange(const RadialDensity& d) {
  return exchange(d, FunctionalId::gea_x, {});
}

FunctionalResult pbe_exchange(const RadialDensity& d) {
  return exchange(d, FunctionalId::pbe_x, {});
}

FunctionalResult b88_exchange(const RadialDensity& d, double beta) {
  if (!(beta > 0.0)) throw ParameterError("B88 beta must be positive");
  FunctionalOptions options;
  options.b88_beta = beta;
  return exchange(d, FunctionalId::b88_x, options);
}

FunctionalResult lda_correlation(const RadialDensity& d) {
  Builder b(d, FunctionalId::lda_c);
  for (std::size_t i = 0; i < b.red.size(); ++i) b.set(i, lda_c_density(d.n()[i]));
  return b.finish();
}

FunctionalResult gea_correlation(const RadialDensity& d) {
  Builder b(d, FunctionalId::gea_c);
  for (std::size_t i = 0; i < b.red.size(); ++i) {
    const Local p = local(d, i);
    double e = lda_c_density(p.n);
    if (p.above_floor) {
      const double t = t_of(p);
      e += p.n * kBetaMB * t * t;
    }
    b.set(i, e);
  }
  return b.finish();
}

FunctionalResult pbe_correlation(const RadialDensity& d) {
  Builder b(d, FunctionalId::pbe_c);
  for (std::size_t i = 0; i < b.red.size(); ++i) {
    const Local p = local(d, i);
    if (p.n <= 0.0) continue;
    const double eps = xc::pw92(xc::wigner_seitz_radius(p.n)).eps;
    const double h = p.above_floor ? xc::pbe_h(eps, t_of(p)) : 0.0;
    b.set(i, p.n * (eps + h));
  }
  return b.finish();
}

FunctionalResult evaluate(FunctionalId id, const RadialDensity& d,
                          const FunctionalOptions& options) {
  switch (id) {
    case FunctionalId::tf: return tf_kinetic(d);
    case FunctionalId::vw9: return vw_gradient_kinetic(d);
    case FunctionalId::gea4: return gea4_kinetic(d);
    case FunctionalId::lda_x: return lda_exchange(d);
    case FunctionalId::gea_x: return gea_exchange(d);
    case FunctionalId::pbe_x: return pbe_exchange(d);
    case FunctionalId::b88_x: return b88_exchange(d, options.b88_beta);
    case FunctionalId::lda_c: return lda_correlation(d);
    case FunctionalId::gea_c: return gea_correlation(d);
    case FunctionalId::pbe_c: return pbe_correlation(d);
  }
  throw ParameterError("unknown functional id");
}

std::vector<double> exchange_energy_density_difference(const RadialDensity& d, FunctionalId id,
                                                       const FunctionalOptions& options) {
  if (!is_exchange(id)) {
    throw ParameterError("functional '" + std::string(to_string(id)) +
                         "' is not an exchange functional");
  }
  if (id == FunctionalId::b88_x && !(options.b88_beta > 0.0)) {
    throw ParameterError("B88 beta must be positive");
  }
  std::vector<double> out(d.n().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Local p = local(d, i);
    const double r = d.grid().r(i);
    out[i] = 4.0 * kPi * r * r *
             (exchange_density(id, p, options) - xc::lda_exchange_density(p.n));
  }
  return out;
}

namespace xc {

double wigner_seitz_radius(double n) { return std::cbrt(3.0 / (4.0 * kPi * n)); }

CorrelationPoint pw92(double rs) {
  const double srs = std::sqrt(rs);
  const double q0 = -2.0 * kA * (1.0 + kAlpha1 * rs);
  const double q1 = 2.0 * kA * (kBeta1 * srs + kBeta2 * rs + kBeta3 * rs * srs + kBeta4 * rs * rs);
  const double dq1 =
      kA * (kBeta1 / srs + 2.0 * kBeta2 + 3.0 * kBeta3 * srs + 4.0 * kBeta4 * rs);
  const double log_term = std::log1p(1.0 / q1);
  CorrelationPoint out;
  out.eps = q0 * log_term;
  out.deps_drs = -2.0 * kA * kAlpha1 * log_term - q0 * dq1 / (q1 * q1 + q1);
  return out;
}

double lda_exchange_density(double n) {
  if (n <= 0.0) return 0.0;
  return -kCx * std::pow(n, 4.0 / 3.0);
}

double lda_xc_potential(double n) {
  if (n <= 0.0) return 0.0;
  const double vx = -std::cbrt(3.0 * n / kPi);
  const double rs = wigner_seitz_radius(n);
  const CorrelationPoint c = pw92(rs);
  return vx + c.eps - rs / 3.0 * c.deps_drs;
}

double pbe_enhancement(double s) {
  return 1.0 + kPbeKappa - kPbeKappa / (1.0 + kPbeMu * s * s / kPbeKappa);
}

double pbe_h(double eps_c, double t) {
  const double ratio = kBetaMB / kGamma;
  const double denom = std::expm1(-eps_c / kGamma);
  const double t2 = t * t;
  if (denom <= 0.0) return 0.0;
  const double a = ratio / denom;
  const double at2 = a * t2;
  const double frac = (1.0 + at2) / (1.0 + at2 + at2 * at2);
  return kGamma * std::log1p(ratio * t2 * frac);
}

}  // namespace xc

}  // namespace zetalab
