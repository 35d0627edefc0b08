#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "zetalab/asymptotics.hpp"
#include "zetalab/atom_scf.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/tf_atom.hpp"

using namespace zetalab;

namespace {

std::vector<ExchangePoint> synthetic(double delta_c, double a1, double a2 = 0.0) {
  std::vector<ExchangePoint> pts;
  for (double Z : {2.0, 10.0, 18.0, 36.0, 54.0, 86.0}) {
    const double x = std::pow(Z, -1.0 / 3.0);
    const double lda = -kTFExchangeCoefficient * std::pow(Z, 5.0 / 3.0) - 0.3 * Z;
    pts.push_back({Z, lda + Z * (delta_c + a1 * x + a2 * x * x), lda});
  }
  return pts;
}

const std::vector<ExchangePoint>& atom_points(FunctionalId id) {
  static std::vector<std::pair<FunctionalId, std::vector<ExchangePoint>>> cache;
  for (const auto& [k, v] : cache) {
    if (k == id) return v;
  }
  std::vector<ExchangePoint> pts;
  for (int Z : supported_atoms()) {
    const TableRow row = table_row(Z);
    pts.push_back({double(Z), row.energy(id), row.energy(FunctionalId::lda_x)});
  }
  cache.emplace_back(id, std::move(pts));
  return cache.back().second;
}

// s and q/s of a e^{-b r} in closed form.
double s_closed(double a, double b, double r) { return b / (2.0 * oracle::kf(a * std::exp(-b * r))); }
double qs_closed(double a, double b, double r) {
  return (b - 2.0 / r) / (2.0 * oracle::kf(a * std::exp(-b * r)));
}

}  // namespace

TEST_CASE("gradient exchange coefficient from synthetic data") {
  const auto pts = synthetic(-0.2, 0.15);
  const AsymptoticFit lin = fit_delta_c(pts);
  CHECK(lin.coefficient("Delta_C") == doctest::Approx(-0.2).epsilon(1e-10));
  CHECK(lin.coefficient("a1") == doctest::Approx(0.15).epsilon(1e-10));
  CHECK(lin.residual_norm < 1e-12);

  const auto curved = synthetic(-0.2, 0.15, -0.4);
  const AsymptoticFit quad = fit_delta_c(curved, 2);
  CHECK(quad.coefficient("Delta_C") == doctest::Approx(-0.2).epsilon(1e-9));
  CHECK(quad.coefficient("a2") == doctest::Approx(-0.4).epsilon(1e-9));

  CHECK_THROWS_AS(fit_delta_c(std::span(pts).first(2)), FitError);
  CHECK_THROWS_AS(fit_delta_c(std::span(pts).first(3), 2), FitError);
  CHECK_NOTHROW(fit_delta_c(std::span(pts).first(3)));
}

TEST_CASE("LDA exchange intercept") {
  std::vector<ExchangePoint> pure, shifted;
  for (double Z : {2.0, 10.0, 18.0, 36.0, 54.0, 86.0}) {
    const double tf = -kTFExchangeCoefficient * std::pow(Z, 5.0 / 3.0);
    pure.push_back({Z, 0.0, tf});
    shifted.push_back({Z, 0.0, tf - 0.01 * Z + 0.05 * std::pow(Z, 2.0 / 3.0)});
  }
  CHECK(std::abs(fit_c_lda(pure).coefficient("C_LDA")) < 1e-12);
  const AsymptoticFit f = fit_c_lda(shifted);
  CHECK(f.coefficient("C_LDA") == doctest::Approx(-0.01).epsilon(1e-9));
  CHECK_THROWS_AS(f.coefficient("a2"), std::out_of_range);
  CHECK_FALSE(f.notices.empty());
}

TEST_CASE("atomic gradient exchange coefficients") {
  const double gea = fit_delta_c(atom_points(FunctionalId::gea_x)).coefficient("Delta_C");
  const double pbe = fit_delta_c(atom_points(FunctionalId::pbe_x)).coefficient("Delta_C");
  const double b88 = fit_delta_c(atom_points(FunctionalId::b88_x)).coefficient("Delta_C");
  CHECK(gea > pbe);
  CHECK(pbe > b88);
  CHECK(gea == doctest::Approx(-0.1006).epsilon(5e-3));
  CHECK(b88 == doctest::Approx(-0.1980).epsilon(5e-3));
}

namespace {

double helium_shift(FunctionalId id, int order) {
  const auto& pts = atom_points(id);
  const double with = fit_delta_c(pts, order).coefficient("Delta_C");
  const double without = fit_delta_c(std::span(pts).subspan(1), order).coefficient("Delta_C");
  return std::abs(with - without) / std::abs(with);
}

}  // namespace

TEST_CASE("property: quadratic extrapolation is insensitive to helium") {
  CHECK(helium_shift(FunctionalId::gea_x, 2) < 0.02);  // 1.9%
  CHECK(helium_shift(FunctionalId::pbe_x, 2) < 0.02);  // 0.3%
}

// Known failure on KS-LDA densities: B88 moves 3.7% (quadratic) and the
// straight-line model moves 6-12% for all three functionals.
TEST_CASE("property: helium insensitivity for B88 and the straight-line model" * doctest::should_fail()) {
  CHECK(helium_shift(FunctionalId::b88_x, 2) < 0.02);
  for (FunctionalId id : {FunctionalId::gea_x, FunctionalId::pbe_x, FunctionalId::b88_x}) {
    CAPTURE(to_string(id));
    CHECK(helium_shift(id, 1) < 0.02);
  }
}

TEST_CASE("exponential parameters") {
  const ExponentialParams p = exponential_params(oracle::exponential(3.0, 2.0));
  CHECK(p.a == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(p.b == doctest::Approx(2.0).epsilon(1e-12));
  const RadialGrid g = default_grid();
  const RadialDensity gauss = oracle::sampled(g, [](double r) { return std::exp(-r * r); });
  CHECK_THROWS_AS(exponential_params(gauss), ParameterError);
  CHECK_THROWS_AS(region_radii(gauss, 1.0), ParameterError);
}

TEST_CASE("region radii against an independent root finder") {
  const RadialDensity d = oracle::exponential();
  for (double zeta : {1.0, 10.0, 1e4}) {
    for (double t : {1.0, 0.5}) {
      CAPTURE(zeta);
      CAPTURE(t);
      const double a = zeta * zeta, b = std::cbrt(zeta);
      const RegionReport rep = region_radii(d, zeta, t);
      const double r0 = 2.0 / b;
      const double rc = oracle::root([&](double r) { return qs_closed(a, b, r) + t; }, 1e-12 * r0, r0);
      const double rq = oracle::root([&](double r) { return qs_closed(a, b, r) - t; }, r0, 100.0 * r0);
      const double rs = oracle::root([&](double r) { return s_closed(a, b, r) - t; }, 0.0, 100.0 * r0);
      REQUIRE(rep.r_c);
      REQUIRE(rep.r_e);
      REQUIRE(rep.r_s);
      CHECK(std::abs(*rep.r_c - rc) < 1e-8 * rc);
      CHECK(std::abs(*rep.r_s - rs) < 1e-8 * rs);
      CHECK(std::abs(*rep.r_e - std::max(rq, rs)) < 1e-8 * rq);
      CHECK(rep.scaled.a == doctest::Approx(a));
      CHECK(rep.scaled.b == doctest::Approx(b));
      CHECK_FALSE(rep.r_tau);
    }
  }
  const RegionReport one = region_radii(d, 1.0);
  CHECK(*one.r_c == doctest::Approx(0.3033882492).epsilon(1e-9));
  CHECK(*one.r_e == doctest::Approx(6.5587652587).epsilon(1e-9));
  CHECK(*one.r_s == doctest::Approx(5.4675136020).epsilon(1e-9));
  CHECK_THROWS_AS(region_radii(d, 0.0), ParameterError);
  CHECK_THROWS_AS(region_radii(d, 1.0, 0.0), ParameterError);
}

TEST_CASE("property: a lower threshold widens the cusp region") {
  const RadialDensity d = oracle::exponential();
  double prev_c = 0.0, prev_s = INFINITY;
  for (double t : {4.0, 2.0, 1.0, 0.5, 0.25}) {
    const RegionReport rep = region_radii(d, 100.0, t);
    CHECK(*rep.r_c > prev_c);
    CHECK(*rep.r_s < prev_s);
    prev_c = *rep.r_c;
    prev_s = *rep.r_s;
  }
}

TEST_CASE("property: regions partition the energy") {
  const RadialDensity d = oracle::exponential();
  for (double zeta : {1.0, 1e3, 1e6}) {
    const RadialDensity scaled = zeta_scale(d, zeta);
    for (FunctionalId id : {FunctionalId::tf, FunctionalId::vw9, FunctionalId::lda_x, FunctionalId::gea_x}) {
      double sum = 0.0;
      for (Region r : {Region::cusp, Region::bulk, Region::evanescent}) sum += region_energy(d, zeta, id, r);
      CHECK(oracle::rel(sum, evaluate(id, scaled).energy) < 1e-8);
    }
  }
}

TEST_CASE("region radius scaling") {
  const RadialDensity d = oracle::exponential();
  const auto zetas = default_region_zetas();
  REQUIRE(zetas.size() == 13);
  const RegionScaling sc = region_scaling_exponents(d, zetas);
  CHECK(sc.cusp.coefficient("p") == doctest::Approx(-2.0 / 3.0).epsilon(3e-3));
  CHECK(sc.evanescent.coefficient("p") == doctest::Approx(-1.0 / 3.0).epsilon(0.05));
  CHECK(sc.re_ratio_variation < 0.05);

  // the ratio r_e zeta^{1/3} / ln zeta flattens as zeta grows
  const auto low = log_spaced(1e3, 1e6, 7);
  const auto high = log_spaced(1e6, 1e9, 7);
  CHECK(region_scaling_exponents(d, high).re_ratio_variation <
        region_scaling_exponents(d, low).re_ratio_variation);

  const std::vector<double> single{1e4};
  CHECK_THROWS_AS(region_scaling_exponents(d, single), FitError);
  const auto narrow = log_spaced(1e3, 1e5, 7);
  CHECK_THROWS_AS(region_scaling_exponents(d, narrow), FitError);
  const auto from_one = log_spaced(1.0, 1e6, 7);
  CHECK_THROWS_AS(region_scaling_exponents(d, from_one), FitError);
}

TEST_CASE("region energy exponents") {
  const RadialDensity d = oracle::exponential();
  const auto zetas = default_region_zetas();
  struct Expect {
    FunctionalId id;
    Region region;
    double p;
    double tol;
  };
  // cusp: n ~ zeta^2 over a volume ~ zeta^{-2}; bulk: homogeneous degree;
  // evanescent: density ~ zeta at r_e over a shell of width 1/b.
  const std::vector<Expect> cases{
      {FunctionalId::tf, Region::cusp, 4.0 / 3.0, 0.02},
      {FunctionalId::lda_x, Region::cusp, 2.0 / 3.0, 0.02},
      {FunctionalId::vw9, Region::cusp, 2.0 / 3.0, 0.02},
      {FunctionalId::tf, Region::bulk, 7.0 / 3.0, 0.005},
      {FunctionalId::lda_x, Region::bulk, 5.0 / 3.0, 0.005},
      {FunctionalId::vw9, Region::bulk, 5.0 / 3.0, 0.005},
      {FunctionalId::gea_x, Region::bulk, 5.0 / 3.0, 0.005},
      {FunctionalId::lda_x, Region::evanescent, 1.0 / 3.0, 0.05},
      {FunctionalId::vw9, Region::evanescent, 2.0 / 3.0, 0.05},
      {FunctionalId::tf, Region::evanescent, 2.0 / 3.0, 0.05},
  };
  for (const Expect& e : cases) {
    CAPTURE(to_string(e.id));
    CAPTURE(to_string(e.region));
    const AsymptoticFit f = region_contributions(d, zetas, e.id, e.region);
    CHECK(std::abs(f.coefficient("p") - e.p) < e.tol);
  }
  CHECK_THROWS_AS(region_contributions(d, zetas, FunctionalId::lda_c, Region::bulk), ParameterError);
  const std::vector<double> with_one{1.0, 1e3, 1e4, 1e5, 1e6};
  const AsymptoticFit f = region_contributions(d, with_one, FunctionalId::tf, Region::bulk);
  CHECK(f.notices.size() == 1);
  const std::vector<double> three{1e3, 1e4, 1e5};
  CHECK_THROWS_AS(region_contributions(d, three, FunctionalId::tf, Region::bulk), FitError);
}

TEST_CASE("property: exponent estimates tighten as the zeta range extends") {
  const RadialDensity d = oracle::exponential();
  double prev_c = INFINITY, prev_e = INFINITY;
  for (double top : {1e6, 3e7, 1e9}) {
    CAPTURE(top);
    const auto zetas = log_spaced(1e3, top, 9);
    const double pc = region_scaling_exponents(d, zetas).cusp.coefficient("p");
    const double pe = region_contributions(d, zetas, FunctionalId::tf, Region::evanescent).coefficient("p");
    CHECK(std::abs(pc + 2.0 / 3.0) < prev_c);
    CHECK(std::abs(pe - 2.0 / 3.0) < prev_e);
    prev_c = std::abs(pc + 2.0 / 3.0);
    prev_e = std::abs(pe - 2.0 / 3.0);
  }
}

TEST_CASE("region names and JSON") {
  for (Region r : {Region::cusp, Region::bulk, Region::evanescent}) {
    CHECK(region_from_string(to_string(r)) == r);
  }
  CHECK_THROWS_AS(region_from_string("core"), ParameterError);
  RegionReport rep = region_radii(oracle::exponential(), 1.0);
  rep.contributions.emplace_back("tf/bulk", 1.5);
  const nlohmann::json j = to_json(rep);
  CHECK(j.at("r_c").get<double>() == doctest::Approx(*rep.r_c));
  CHECK(j.at("r_tau").is_null());
  CHECK(j.at("contributions").at("tf/bulk").get<double>() == 1.5);
}

TEST_CASE("kinetic density sign change in atoms") {
  const AtomResult kr = solve_atom(36);
  const auto r = tau_prime_evanescent_radius(kr.density);
  REQUIRE(r);
  CHECK(*r == doctest::Approx(2.56).epsilon(0.01));
  const auto& tp = *kr.density.tau_prime();
  const std::size_t i = kr.density.grid().locate(*r);
  CHECK(tp[i - 2] > 0.0);
  CHECK(tp[i + 2] < 0.0);
  CHECK_FALSE(tau_prime_evanescent_radius(oracle::exponential()));
}
