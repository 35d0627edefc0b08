#include <cmath>
#include <functional>

#include "doctest.h"
#include "oracles.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/functionals.hpp"

using namespace zetalab;

namespace {

double cf() { return 0.3 * std::pow(3.0 * oracle::pi * oracle::pi, 2.0 / 3.0); }
double cx() { return 0.75 * std::cbrt(3.0 / oracle::pi); }

// Closed-form ingredients of n = e^{-r}.
double s_exp(double r) { return 1.0 / (2.0 * oracle::kf(std::exp(-r))); }
double t_exp(double r) {
  const double ks = std::sqrt(4.0 * oracle::kf(std::exp(-r)) / oracle::pi);
  return 1.0 / (2.0 * ks);
}

// The grid stops at r = 50 where e^{-r} is far below any tolerance used here;
// beyond that the closed forms overflow.
double radial_to_50(const std::function<double(double)>& e) {
  auto f = [&](double r) { return 4.0 * oracle::pi * r * r * e(r); };
  return oracle::integrate_interval(f, 0.0, 1.0) + oracle::integrate_interval(f, 1.0, 10.0) +
         oracle::integrate_interval(f, 10.0, 50.0);
}

// A log grid resolves e^{-r^2} only while h r^2 stays small. The grid stops
// before the density drops under the floor, so nothing is masked after
// scaling by zeta >= 1.
constexpr double kGaussRmax = 7.5;
RadialDensity gaussian() {
  const RadialGrid g(GridKind::exponential, 1e-6, kGaussRmax, 5000);
  return oracle::sampled(g, [](double r) { return std::exp(-r * r); });
}

}  // namespace

TEST_CASE("Thomas-Fermi, von Weizsaecker and LDA exchange in closed form") {
  const RadialDensity d = oracle::exponential();
  // int 4 pi r^2 e^{-k r} dr = 8 pi / k^3
  const double tf = cf() * 8.0 * oracle::pi / std::pow(5.0 / 3.0, 3);
  const double lx = -cx() * 8.0 * oracle::pi / std::pow(4.0 / 3.0, 3);
  CHECK(oracle::rel(tf_kinetic(d).energy, tf) < 1e-9);
  CHECK(oracle::rel(lda_exchange(d).energy, lx) < 1e-9);
  CHECK(lda_exchange(d).energy == doctest::Approx(-7.831).epsilon(1e-3));
  CHECK(oracle::rel(vw_gradient_kinetic(d).energy, 8.0 * oracle::pi / 72.0) < 1e-8);

  const RadialDensity d2 = oracle::exponential(3.0, 2.0);
  const double n2 = 3.0 * 8.0 * oracle::pi / 8.0;
  CHECK(oracle::rel(vw_gradient_kinetic(d2).energy, 4.0 * n2 / 72.0) < 1e-8);
}

TEST_CASE("gradient exchange functionals against adaptive quadrature") {
  const RadialDensity d = oracle::exponential();
  const double mu = kMuGea, kappa = kPbeKappa, mupbe = kPbeMu;

  const double gea = radial_to_50([&](double r) {
    const double s = s_exp(r);
    return oracle::ex_lda(std::exp(-r)) * (1.0 + mu * s * s);
  });
  CHECK(oracle::rel(gea_exchange(d).energy, gea) < 1e-8);

  const double pbe = radial_to_50([&](double r) {
    const double s = s_exp(r);
    return oracle::ex_lda(std::exp(-r)) * (1.0 + kappa - kappa / (1.0 + mupbe * s * s / kappa));
  });
  CHECK(oracle::rel(pbe_exchange(d).energy, pbe) < 1e-8);

  for (double beta : {0.0042, b88_theoretical_beta()}) {
    const double b88 = radial_to_50([&](double r) {
      const double n = std::exp(-r);
      const double ns = 0.5 * n;
      const double x = ns / std::pow(ns, 4.0 / 3.0);  // |grad n_sigma| = n_sigma here
      const double per_spin = -beta * std::pow(ns, 4.0 / 3.0) * x * x / (1.0 + 6.0 * beta * x * std::asinh(x));
      return oracle::ex_lda(n) + 2.0 * per_spin;
    });
    CAPTURE(beta);
    CHECK(oracle::rel(b88_exchange(d, beta).energy, b88) < 1e-8);
  }
}

TEST_CASE("correlation functionals against adaptive quadrature") {
  const RadialDensity d = oracle::exponential();
  const double lda = radial_to_50([](double r) {
    const double n = std::exp(-r);
    return n * oracle::pw92(oracle::rs_of(n));
  });
  CHECK(oracle::rel(lda_correlation(d).energy, lda) < 1e-8);

  const double gea = radial_to_50([](double r) {
    const double n = std::exp(-r);
    const double t = t_exp(r);
    return n * (oracle::pw92(oracle::rs_of(n)) + 0.066725 * t * t);
  });
  CHECK(oracle::rel(gea_correlation(d).energy, gea) < 1e-8);

  const double pbe = radial_to_50([](double r) {
    const double n = std::exp(-r);
    const double eps = oracle::pw92(oracle::rs_of(n));
    return n * (eps + oracle::pbe_h(eps, t_exp(r)));
  });
  CHECK(oracle::rel(pbe_correlation(d).energy, pbe) < 1e-8);
}

TEST_CASE("fourth-order kinetic term on a cusp-free Gaussian") {
  const RadialDensity d = gaussian();
  CHECK_FALSE(has_cusp(d));
  const auto res = gea4_kinetic(d);
  CHECK(res.warnings.empty());
  const double ref = oracle::integrate_interval(
      [](double r) {
        const double n = std::exp(-r * r);
        const double kf = oracle::kf(n);
        const double s = 2.0 * r / (2.0 * kf);
        const double q = (4.0 * r * r - 6.0) / (4.0 * kf * kf);
        return 4.0 * oracle::pi * r * r * oracle::tau_tf(n) *
               (8.0 / 81.0 * q * q - s * s * q / 9.0 + 8.0 / 243.0 * std::pow(s, 4));
      },
      0.0, kGaussRmax);
  CHECK(oracle::rel(res.energy, ref) < 1e-6);
}

TEST_CASE("cusp detection warns for the fourth-order term") {
  const RadialDensity d = oracle::exponential();
  CHECK(has_cusp(d));
  CHECK_FALSE(gea4_kinetic(d).warnings.empty());
}

TEST_CASE("property: homogeneous functionals scale as powers of zeta") {
  const RadialDensity d = oracle::exponential();
  const RadialDensity gauss = gaussian();
  for (double z : {2.0, 8.0, 64.0}) {
    CAPTURE(z);
    const RadialDensity s = zeta_scale(d, z);
    CHECK(oracle::rel(tf_kinetic(s).energy, std::pow(z, 7.0 / 3.0) * tf_kinetic(d).energy) < 1e-12);
    CHECK(oracle::rel(lda_exchange(s).energy, std::pow(z, 5.0 / 3.0) * lda_exchange(d).energy) < 1e-12);
    CHECK(oracle::rel(vw_gradient_kinetic(s).energy, std::pow(z, 5.0 / 3.0) * vw_gradient_kinetic(d).energy) <
          1e-10);
    const RadialDensity gs = zeta_scale(gauss, z);
    CHECK(oracle::rel(gea4_kinetic(gs).energy, z * gea4_kinetic(gauss).energy) < 1e-8);
  }
}

TEST_CASE("PW92 derivative and exchange-correlation potential") {
  for (double rs : {0.01, 0.3, 1.0, 4.0, 30.0}) {
    CAPTURE(rs);
    const auto p = xc::pw92(rs);
    CHECK(oracle::rel(p.eps, oracle::pw92(rs)) < 1e-14);
    const double h = 1e-5 * rs;
    const double fd = (oracle::pw92(rs + h) - oracle::pw92(rs - h)) / (2.0 * h);
    CHECK(oracle::rel(p.deps_drs, fd) < 1e-7);
  }
  auto exc = [](double n) { return oracle::ex_lda(n) + n * oracle::pw92(oracle::rs_of(n)); };
  for (double n : {1e-4, 0.01, 1.0, 100.0}) {
    CAPTURE(n);
    const double h = 1e-5 * n;
    const double fd = (exc(n + h) - exc(n - h)) / (2.0 * h);
    CHECK(oracle::rel(xc::lda_xc_potential(n), fd) < 1e-7);
    CHECK(oracle::rel(xc::wigner_seitz_radius(n), oracle::rs_of(n)) < 1e-14);
    CHECK(oracle::rel(xc::lda_exchange_density(n), oracle::ex_lda(n)) < 1e-14);
  }
  CHECK(xc::pbe_enhancement(0.0) == 1.0);
  CHECK(xc::pbe_enhancement(1e6) == doctest::Approx(1.0 + kPbeKappa).epsilon(1e-6));
  CHECK(xc::pbe_h(-0.05, 0.0) == 0.0);
  CHECK(oracle::rel(xc::pbe_h(-0.05, 0.7), oracle::pbe_h(-0.05, 0.7)) < 1e-13);
}

TEST_CASE("B88 coefficient that balances gradient and cusp parts") {
  const double beta = b88_theoretical_beta();
  CHECK(oracle::rel(beta, 5.0 / (108.0 * std::cbrt(6.0 * std::pow(oracle::pi, 5)))) < 1e-14);
  CHECK(beta == doctest::Approx(0.003780).epsilon(1e-3));
  CHECK(std::abs(beta - kB88BetaFitted) / kB88BetaFitted < 0.15);
  CHECK_THROWS_AS(b88_exchange(oracle::exponential(), 0.0), ParameterError);
  CHECK_THROWS_AS(b88_exchange(oracle::exponential(), -1e-3), ParameterError);
}

TEST_CASE("functional ids and dispatch") {
  for (FunctionalId id : kAllFunctionals) {
    CHECK(functional_from_string(to_string(id)) == id);
  }
  CHECK_THROWS_AS(functional_from_string("pbe"), ParameterError);
  try {
    functional_from_string("nope");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("gea_x") != std::string::npos);
  }
  CHECK(is_exchange(FunctionalId::b88_x));
  CHECK_FALSE(is_exchange(FunctionalId::pbe_c));

  const RadialDensity d = oracle::exponential();
  const FunctionalOptions opts{0.005};
  CHECK(evaluate(FunctionalId::b88_x, d, opts).energy == b88_exchange(d, 0.005).energy);
  CHECK(evaluate(FunctionalId::pbe_c, d).energy == pbe_correlation(d).energy);
  const auto r = evaluate(FunctionalId::tf, d);
  CHECK(r.radial_energy_density.size() == d.n().size());
  CHECK(oracle::rel(d.grid().integrate(r.radial_energy_density), r.energy) < 1e-14);
}

TEST_CASE("exchange energy density difference") {
  const RadialDensity d = oracle::exponential();
  for (FunctionalId id : {FunctionalId::gea_x, FunctionalId::pbe_x, FunctionalId::b88_x}) {
    const auto diff = exchange_energy_density_difference(d, id);
    const double expected = evaluate(id, d).energy - lda_exchange(d).energy;
    CHECK(oracle::rel(d.grid().integrate(diff), expected) < 1e-10);
  }
  CHECK_THROWS_AS(exchange_energy_density_difference(d, FunctionalId::lda_c), ParameterError);
  CHECK_THROWS_AS(exchange_energy_density_difference(d, FunctionalId::tf), ParameterError);
}
