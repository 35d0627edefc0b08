#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/tf_atom.hpp"

using namespace zetalab;

namespace {

const TFSolution& tf() {
  static const TFSolution sol = solve_universal_tf();
  return sol;
}

// Known value of the neutral-atom initial slope.
constexpr double kSlope = -1.588071022611375;

// Averages over the Z = 1 TF density in the variable x = r / b, computed
// from phi alone with adaptive quadrature.
double tf_average(const std::function<double(double x, double phi, double dphi)>& g) {
  const double b = tf_length_scale(1.0);
  auto weight = [&](double x) {
    const double p = tf().phi(x);
    const double n = std::pow(2.0 * p / (x * b), 1.5) / (3.0 * oracle::pi * oracle::pi);
    return 4.0 * oracle::pi * x * x * b * b * b * n * g(x, p, tf().dphi(x));
  };
  return oracle::integrate_interval(weight, 0.0, 1.0) + oracle::integrate_interval(weight, 1.0, 100.0) +
         oracle::integrate_interval(weight, 100.0, 1e4);
}

double ln_rs(double x, double phi) {
  const double b = tf_length_scale(1.0);
  const double n = std::pow(2.0 * phi / (x * b), 1.5) / (3.0 * oracle::pi * oracle::pi);
  return std::log(oracle::rs_of(n));
}

double pw92_a() { return 0.031091; }
// High-density PW92: eps -> A ln rs + 2 A ln(2 A b1).
double pw92_c() { return -2.0 * pw92_a() * std::log(2.0 * pw92_a() * 7.5957); }

}  // namespace

TEST_CASE("initial slope of the screening function") {
  CHECK(std::abs(tf().slope_origin() - kSlope) < 1e-9);
  CHECK(std::abs(tf().shooting_slope() - kSlope) < 1e-8);
  CHECK(std::abs(shoot_initial_slope(1e-12) - kSlope) < 1e-8);
  CHECK_THROWS_AS(shoot_initial_slope(1e-12, -1.5, -1.4), SolverError);
  CHECK_THROWS_AS(shoot_initial_slope(0.0), ParameterError);
  CHECK_THROWS_AS(solve_universal_tf(-1.0), ParameterError);
}

TEST_CASE("screening function satisfies its equation") {
  CHECK(tf().phi(0.0) == 1.0);
  for (double x : {1e-3, 0.05, 0.3, 1.0, 2.5, 7.0, 30.0, 200.0}) {
    CAPTURE(x);
    const double h = 1e-4 * x;
    const double d2 = (tf().dphi(x + h) - tf().dphi(x - h)) / (2.0 * h);
    const double rhs = std::pow(tf().phi(x), 1.5) / std::sqrt(x);
    CHECK(oracle::rel(d2, rhs) < 1e-6);
    const double d1 = (tf().phi(x + h) - tf().phi(x - h)) / (2.0 * h);
    CHECK(oracle::rel(tf().dphi(x), d1) < 1e-7);
    CHECK(tf().phi(x) > 0.0);
    CHECK(tf().dphi(x) < 0.0);
  }
}

TEST_CASE("screening function approaches 144 / x^3") {
  double prev = 0.0;
  for (double x : {1e2, 1e3, 1e4}) {
    const double ratio = tf().phi(x) * x * x * x / 144.0;
    CHECK(ratio < 1.0);
    CHECK(ratio > prev);
    prev = ratio;
  }
  CHECK(prev > 0.97);
}

TEST_CASE("sampled abscissa") {
  const auto xs = tf().sample_x(50, 1e-3, 10.0);
  REQUIRE(xs.size() == 50);
  CHECK(xs.front() == doctest::Approx(1e-3));
  CHECK(xs.back() == doctest::Approx(10.0));
}

TEST_CASE("TF density holds Z electrons") {
  for (double Z : {1.0, 10.0, 54.0, 1e4}) {
    CAPTURE(Z);
    CHECK(oracle::rel(tf_density(tf(), Z).n_electrons(), Z) < 1e-6);
  }
  CHECK_THROWS_AS(tf_density(tf(), 0.0), ParameterError);
  CHECK_THROWS_AS(tf_length_scale(-1.0), ParameterError);
  CHECK(tf_length_scale(1.0) == doctest::Approx(0.8853).epsilon(1e-4));
}

TEST_CASE("property: TF density of Z is the zeta-scaled Z = 1 density") {
  const RadialDensity one = tf_density(tf(), 1.0);
  for (double Z : {8.0, 64.0}) {
    const RadialDensity scaled = zeta_scale(one, Z);
    const RadialDensity direct = tf_density(tf(), Z, scaled.grid());
    for (std::size_t i = 0; i < direct.n().size(); i += 29) {
      if (direct.n()[i] < 1e-20) continue;
      CHECK(oracle::rel(scaled.n()[i], direct.n()[i]) < 1e-12);
    }
  }
}

TEST_CASE("TF energy, virial ratios and exchange") {
  const double Z = 1.0;
  const TFEnergy e = tf_energy_components(tf(), Z);
  CHECK(oracle::rel(e.slope_formula, 3.0 / 7.0 * kSlope / tf_length_scale(1.0)) < 1e-9);
  CHECK(e.total == doctest::Approx(-0.76874512).epsilon(1e-5));
  CHECK(oracle::rel(e.kinetic, -e.total) < 1e-4);
  CHECK(oracle::rel(e.hartree, -e.nuclear / 7.0) < 1e-4);
  CHECK(oracle::rel(e.total, e.kinetic + e.nuclear + e.hartree) < 1e-14);
  for (double z : {2.0, 36.0, 86.0}) {
    CHECK(oracle::rel(tf_total_energy(tf(), z), e.total * std::pow(z, 7.0 / 3.0)) < 1e-4);
    CHECK(oracle::rel(lda_x_on_tf(tf(), z), lda_x_on_tf(tf(), 1.0) * std::pow(z, 5.0 / 3.0)) < 1e-6);
  }
  CHECK(lda_x_on_tf(tf(), 1.0) == doctest::Approx(-0.22082741).epsilon(1e-5));
  const double ex_oracle = tf_average([](double x, double phi, double) {
    const double b = tf_length_scale(1.0);
    const double n = std::pow(2.0 * phi / (x * b), 1.5) / (3.0 * oracle::pi * oracle::pi);
    return oracle::ex_lda(n) / n;
  });
  CHECK(oracle::rel(lda_x_on_tf(tf(), 1.0), ex_oracle) < 1e-6);
}

TEST_CASE("high-density correlation limit against quadrature") {
  const double mean_ln_rs = tf_average([](double x, double phi, double) { return ln_rs(x, phi); });
  const CorrelationLimit lda = correlation_high_density_limit(tf(), FunctionalId::lda_c);
  CHECK(oracle::rel(lda.a_c, -2.0 / 3.0 * pw92_a()) < 1e-3);
  CHECK(lda.a_c == doctest::Approx(-0.020727).epsilon(1e-4));
  CHECK(std::abs(lda.b_c - (pw92_a() * mean_ln_rs - pw92_c())) < 2e-5);

  const double gamma = (1.0 - std::log(2.0)) / (oracle::pi * oracle::pi);
  const double beta = 0.066725;
  const double mean_h = tf_average([&](double x, double phi, double dphi) {
    const double b = tf_length_scale(1.0);
    const double n = std::pow(2.0 * phi / (x * b), 1.5) / (3.0 * oracle::pi * oracle::pi);
    const double grad = 1.5 * std::abs(dphi / phi - 1.0 / x) / b;  // |n'| / n
    const double ks = std::sqrt(4.0 * oracle::kf(n) / oracle::pi);
    const double t = grad / (2.0 * ks);
    return gamma * std::log(1.0 + beta / gamma * t * t);
  });
  const CorrelationLimit pbe = correlation_high_density_limit(tf(), FunctionalId::pbe_c);
  CHECK(pbe.a_c == doctest::Approx(lda.a_c));
  CHECK(std::abs(pbe.b_c - (lda.b_c + mean_h)) < 2e-5);
  CHECK_THROWS_AS(correlation_high_density_limit(tf(), FunctionalId::gea_c), ParameterError);
}

TEST_CASE("fitted correlation expansion approaches the limit") {
  const auto zetas = log_spaced(1.0, 1e4, 17);
  for (FunctionalId id : {FunctionalId::lda_c, FunctionalId::pbe_c}) {
    CAPTURE(to_string(id));
    const CorrelationLimit lim = correlation_high_density_limit(tf(), id);
    const AsymptoticFit fit = correlation_asymptotics(tf(), id, zetas);
    CHECK(oracle::rel(fit.coefficient("A_C"), lim.a_c) < 0.01);
    CHECK(std::abs(fit.coefficient("B_C") - lim.b_c) < 2e-3);
    CHECK(fit.coefficients.size() == 7);
    // Fewer correction terms fit the same data worse.
    const AsymptoticFit two = correlation_asymptotics(tf(), id, zetas, 2);
    CHECK(two.coefficients.size() == 4);
    CHECK(two.residual_norm >= fit.residual_norm);
  }
}

TEST_CASE("correlation expansion input validation") {
  const auto zetas = log_spaced(1.0, 1e4, 17);
  CHECK_THROWS_AS(correlation_asymptotics(tf(), FunctionalId::gea_c, zetas), ParameterError);
  CHECK_THROWS_AS(correlation_asymptotics(tf(), FunctionalId::lda_c, zetas, 6), ParameterError);
  const auto few = log_spaced(1.0, 1e4, 7);
  CHECK_THROWS_AS(correlation_asymptotics(tf(), FunctionalId::lda_c, few, 0), FitError);
  const auto narrow = log_spaced(1.0, 50.0, 12);
  CHECK_THROWS_AS(correlation_asymptotics(tf(), FunctionalId::lda_c, narrow), FitError);
  const auto eight = log_spaced(1.0, 1e4, 8);
  CHECK_THROWS_AS(correlation_asymptotics(tf(), FunctionalId::lda_c, eight, 5), FitError);
  CHECK_NOTHROW(correlation_asymptotics(tf(), FunctionalId::lda_c, eight, 4));
}

TEST_CASE("log-spaced values") {
  const auto v = log_spaced(1.0, 1e4, 5);
  REQUIRE(v.size() == 5);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == doctest::Approx(std::pow(10.0, double(i))));
  CHECK(log_spaced(3.0, 3.0, 1).front() == 3.0);
  CHECK_THROWS_AS(log_spaced(0.0, 1.0, 4), ParameterError);
  CHECK_THROWS_AS(log_spaced(2.0, 1.0, 4), ParameterError);
}
