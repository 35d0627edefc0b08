#pragma once

// Independent reference computations for the tests: adaptive quadrature and
// bracketed root finding from Boost.Math, plus closed forms written out
// separately from the library code.

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include "zetalab/density.hpp"
#include "zetalab/radial_grid.hpp"

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// int_0^inf f(r) dr, split at `split` so peaked integrands are resolved.
inline double integrate_half_line(const std::function<double(double)>& f, double split = 1.0) {
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  return ts.integrate(f, 0.0, split, 1e-14) + es.integrate([&](double r) { return f(r + split); },
                                                           0.0, std::numeric_limits<double>::infinity(),
                                                           1e-14);
}

/// int_a^b f(r) dr with adaptive Gauss-Kronrod.
inline double integrate_interval(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

/// Root of f on [lo, hi] (sign change required) to full precision.
inline double root(const std::function<double(double)>& f, double lo, double hi) {
  boost::math::tools::eps_tolerance<double> tol(52);
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (a + b);
}

/// Spherical-density energy 4 pi int r^2 e(r) dr.
inline double radial_energy(const std::function<double(double)>& e, double split = 1.0) {
  return integrate_half_line([&](double r) { return 4.0 * pi * r * r * e(r); }, split);
}

// Uniform-gas pieces, written independently of the library.
inline double kf(double n) { return std::pow(3.0 * pi * pi * n, 1.0 / 3.0); }
inline double ex_lda(double n) { return -0.75 * std::pow(3.0 / pi, 1.0 / 3.0) * std::pow(n, 4.0 / 3.0); }
inline double tau_tf(double n) { return 0.3 * std::pow(3.0 * pi * pi, 2.0 / 3.0) * std::pow(n, 5.0 / 3.0); }

/// Perdew-Wang 1992 unpolarized correlation energy per electron.
inline double pw92(double rs) {
  const double A = 0.031091, a1 = 0.21370;
  const double b1 = 7.5957, b2 = 3.5876, b3 = 1.6382, b4 = 0.49294;
  const double den = 2.0 * A * (b1 * std::sqrt(rs) + b2 * rs + b3 * std::pow(rs, 1.5) + b4 * rs * rs);
  return -2.0 * A * (1.0 + a1 * rs) * std::log(1.0 + 1.0 / den);
}

inline double rs_of(double n) { return std::pow(3.0 / (4.0 * pi * n), 1.0 / 3.0); }

/// PBE correlation gradient term H(rs, t) per electron.
inline double pbe_h(double eps, double t) {
  const double beta = 0.066725;
  const double gamma = (1.0 - std::log(2.0)) / (pi * pi);
  const double A = beta / gamma / (std::exp(-eps / gamma) - 1.0);
  const double t2 = t * t;
  const double num = 1.0 + A * t2;
  return gamma * std::log(1.0 + beta / gamma * t2 * num / (1.0 + A * t2 + A * A * t2 * t2));
}

/// Samples of a closed-form density on a grid.
inline zetalab::RadialDensity sampled(const zetalab::RadialGrid& g,
                                      const std::function<double(double)>& n) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = n(g.r(i));
  return zetalab::RadialDensity::from_samples(g, std::move(v));
}

inline zetalab::RadialDensity exponential(double a = 1.0, double b = 1.0, std::size_t points = 1200) {
  zetalab::RadialGrid g(zetalab::GridKind::exponential, 1e-6 / b, 50.0 / b, points);
  return sampled(g, [=](double r) { return a * std::exp(-b * r); });
}

inline double rel(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

}  // namespace oracle
