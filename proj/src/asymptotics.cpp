#include "zetalab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "zetalab/errors.hpp"
#include "zetalab/tf_atom.hpp"

namespace zetalab {

namespace {

constexpr double kPi = std::numbers::pi;

AsymptoticFit polynomial_in_z13(std::string model, std::span<const ExchangePoint> points,
                                int order, std::string intercept_name,
                                const std::function<double(const ExchangePoint&)>& value) {
  if (order < 0) throw ParameterError("fit order must be non-negative");
  const std::size_t need = static_cast<std::size_t>(order) + 2;
  if (points.size() < need) {
    throw FitError(model + ": " + std::to_string(points.size()) + " points, order " +
                   std::to_string(order) + " needs at least " + std::to_string(need));
  }
  std::vector<std::string> names{std::move(intercept_name)};
  for (int k = 1; k <= order; ++k) names.push_back("a" + std::to_string(k));
  std::vector<std::vector<double>> rows;
  std::vector<double> y;
  std::vector<double> x;
  for (const auto& p : points) {
    if (!(p.Z > 0.0)) throw FitError(model + ": Z must be positive");
    const double u = 1.0 / std::cbrt(p.Z);
    std::vector<double> row(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) row[static_cast<std::size_t>(k)] = std::pow(u, k);
    rows.push_back(std::move(row));
    y.push_back(value(p));
    x.push_back(u);
  }
  AsymptoticFit fit = least_squares(std::move(model), rows, y, names);
  fit.abscissa = std::move(x);
  return fit;
}

// Bisection on a sign change of f over [lo, hi] to double precision.
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-16 * std::abs(hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double fermi_k(const ExponentialParams& p, double r) {
  return std::cbrt(3.0 * kPi * kPi * p.a * std::exp(-p.b * r));
}

double log_log(double zeta) { return std::log(std::log(zeta)); }

}  // namespace

AsymptoticFit fit_delta_c(std::span<const ExchangePoint> points, int order) {
  return polynomial_in_z13("(E_x - E_x^LDA)/Z = Delta_C + sum a_k Z^{-k/3}", points, order,
                           "Delta_C",
                           [](const ExchangePoint& p) { return (p.e_x - p.e_x_lda) / p.Z; });
}

AsymptoticFit fit_c_lda(std::span<const ExchangePoint> points, int order) {
  AsymptoticFit fit = polynomial_in_z13(
      "(E_x^LDA + 0.2208 Z^{5/3})/Z = C_LDA + sum a_k Z^{-k/3}", points, order, "C_LDA",
      [](const ExchangePoint& p) {
        return (p.e_x_lda + kTFExchangeCoefficient * std::pow(p.Z, 5.0 / 3.0)) / p.Z;
      });
  const auto [lo, hi] = std::minmax_element(fit.residuals.begin(), fit.residuals.end());
  std::ostringstream msg;
  msg << "shell oscillations: residual spread " << (*hi - *lo)
      << " hartree bounds the intercept uncertainty";
  fit.notices.push_back(msg.str());
  return fit;
}

ExponentialParams exponential_params(const RadialDensity& d) {
  const auto n = d.n();
  const auto& g = d.grid();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < kDensityFloor) continue;
    const double x = g.r(i);
    const double y = std::log(n[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 3) throw ParameterError("density has too few samples above the floor");
  const double mm = static_cast<double>(m);
  const double slope = (mm * sxy - sx * sy) / (mm * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / mm;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < kDensityFloor) continue;
    if (std::abs(std::log(n[i]) - (icpt + slope * g.r(i))) > 1e-8) {
      throw ParameterError("density is not a pure exponential a exp(-b r)");
    }
  }
  if (!(slope < 0.0)) throw ParameterError("exponential density must decay");
  return {std::exp(icpt), -slope};
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::cusp: return "cusp";
    case Region::bulk: return "bulk";
    case Region::evanescent: return "evanescent";
  }
  return "?";
}

Region region_from_string(std::string_view name) {
  if (name == "cusp") return Region::cusp;
  if (name == "bulk") return Region::bulk;
  if (name == "evanescent") return Region::evanescent;
  throw ParameterError("unknown region '" + std::string(name) +
                       "' (valid: cusp, bulk, evanescent)");
}

RegionReport region_radii(const RadialDensity& d, double zeta, double threshold) {
  if (!(zeta > 0.0)) throw ParameterError("zeta must be positive");
  if (!(threshold > 0.0)) throw ParameterError("threshold must be positive");
  const ExponentialParams base = exponential_params(d);
  RegionReport rep;
  rep.zeta = zeta;
  rep.threshold = threshold;
  rep.scaled = {zeta * zeta * base.a, std::cbrt(zeta) * base.b};
  const ExponentialParams p = rep.scaled;
  const double r0 = 2.0 / p.b;  // q changes sign here

  // s = b / (2 k_F) grows like exp(b r / 3): closed-form root.
  const double arg = 2.0 * fermi_k(p, 0.0) * threshold / p.b;
  rep.r_s = arg > 1.0 ? 3.0 / p.b * std::log(arg) : 0.0;

  // |q/s| beyond r0 increases monotonically from zero.
  auto outer = [&](double r) { return (p.b - 2.0 / r) / (2.0 * fermi_k(p, r)) - threshold; };
  double hi = 2.0 * r0;
  while (outer(hi) < 0.0) hi *= 2.0;
  const double r_q = bisect(outer, r0, hi);
  rep.r_e = std::max(*rep.r_s, r_q);

  // Inside r0, |q/s| decreases monotonically from infinity to zero.
  auto inner = [&](double r) { return (2.0 / r - p.b) / (2.0 * fermi_k(p, r)) - threshold; };
  double lo = 0.5 * r0;
  while (inner(lo) < 0.0) lo *= 0.5;
  rep.r_c = bisect(inner, lo, r0);

  rep.r_tau = tau_prime_evanescent_radius(d);
  if (rep.r_tau) *rep.r_tau /= std::cbrt(zeta);
  return rep;
}

std::optional<double> tau_prime_evanescent_radius(const RadialDensity& d) {
  if (!d.tau_prime()) return std::nullopt;
  const auto& tp = *d.tau_prime();
  const auto n = d.n();
  // Outermost sign change to negative among points with meaningful density.
  std::size_t last = tp.size();
  while (last > 0 && n[last - 1] < 1e-12 * n[0]) --last;
  if (last < 2 || tp[last - 1] >= 0.0) return std::nullopt;
  std::size_t i = last - 1;
  while (i > 0 && tp[i - 1] < 0.0) --i;
  if (i == 0) return std::nullopt;
  const double r1 = d.grid().r(i - 1), r2 = d.grid().r(i);
  return r1 + (r2 - r1) * tp[i - 1] / (tp[i - 1] - tp[i]);
}

namespace {

// [begin, end) of a region; empty when begin >= end.
std::pair<double, double> region_bounds(const RegionReport& rep, Region region) {
  const double rc = rep.r_c.value_or(0.0);
  const double re = std::max(rep.r_e.value_or(INFINITY), rc);
  switch (region) {
    case Region::cusp: return {0.0, rc};
    case Region::bulk: return {rc, re};
    case Region::evanescent: return {re, INFINITY};
  }
  return {0.0, 0.0};
}

}  // namespace

double region_energy(const RadialDensity& d, double zeta, FunctionalId functional, Region region,
                     double threshold) {
  const RegionReport rep = region_radii(d, zeta, threshold);
  const auto [a, b] = region_bounds(rep, region);
  if (!(a < b)) return 0.0;
  const RadialDensity scaled = zeta_scale(d, zeta);
  const FunctionalResult res = evaluate(functional, scaled);
  return scaled.grid().integrate_range(res.radial_energy_density, a,
                                       std::min(b, scaled.grid().r_max()));
}

RegionScaling region_scaling_exponents(const RadialDensity& d, std::span<const double> zeta_list,
                                       double threshold) {
  if (zeta_list.size() < 3) throw FitError("region scaling needs at least three zeta values");
  const auto [lo, hi] = std::minmax_element(zeta_list.begin(), zeta_list.end());
  if (!(*lo > 1.0) || *hi / *lo < 1e3 * (1.0 - 1e-12)) {
    throw FitError("zeta list must exceed 1 and span at least three decades");
  }
  RegionScaling out;
  std::vector<std::vector<double>> rows_c, rows_e;
  std::vector<double> y_c, y_e;
  for (double z : zeta_list) {
    const RegionReport rep = region_radii(d, z, threshold);
    out.zeta.push_back(z);
    rows_c.push_back({std::log(z), 1.0});
    y_c.push_back(std::log(*rep.r_c));
    rows_e.push_back({std::log(z), log_log(z), 1.0});
    y_e.push_back(std::log(*rep.r_e));
    out.re_ratio.push_back(*rep.r_e * std::cbrt(z) / std::log(z));
  }
  out.cusp = least_squares("ln r_c = p ln zeta + c", rows_c, y_c, {"p", "c"});
  out.cusp.abscissa = out.zeta;
  out.evanescent =
      least_squares("ln r_e = p ln zeta + a ln ln zeta + c", rows_e, y_e, {"p", "a", "c"});
  out.evanescent.abscissa = out.zeta;

  double mn = INFINITY, mx = -INFINITY, sum = 0.0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < out.zeta.size(); ++i) {
    if (out.zeta[i] < *hi / 10.0 * (1.0 - 1e-12)) continue;
    mn = std::min(mn, out.re_ratio[i]);
    mx = std::max(mx, out.re_ratio[i]);
    sum += out.re_ratio[i];
    ++cnt;
  }
  out.re_ratio_variation = (mx - mn) / (sum / static_cast<double>(cnt));
  return out;
}

AsymptoticFit region_contributions(const RadialDensity& d, std::span<const double> zeta_list,
                                   FunctionalId functional, Region region, double threshold) {
  if (functional != FunctionalId::tf && functional != FunctionalId::vw9 &&
      functional != FunctionalId::lda_x && functional != FunctionalId::gea_x) {
    throw ParameterError("region contributions support tf, vw9, lda_x and gea_x, not " +
                         std::string(to_string(functional)));
  }
  std::vector<std::string> notices;
  std::vector<std::vector<double>> rows;
  std::vector<double> y, x;
  for (double z : zeta_list) {
    if (!(z > 1.0)) {
      notices.push_back("zeta = " + std::to_string(z) + " skipped: ln ln zeta undefined");
      continue;
    }
    const double e = region_energy(d, z, functional, region, threshold);
    if (e == 0.0 || !std::isfinite(e)) {
      notices.push_back("zeta = " + std::to_string(z) + " skipped: empty " +
                        std::string(to_string(region)) + " region");
      continue;
    }
    rows.push_back({std::log(z), log_log(z), 1.0});
    y.push_back(std::log(std::abs(e)));
    x.push_back(z);
  }
  if (rows.size() < 4) {
    throw FitError("region contributions: only " + std::to_string(rows.size()) +
                   " usable zeta values");
  }
  AsymptoticFit fit = least_squares("ln|E_" + std::string(to_string(region)) + "[" +
                                        std::string(to_string(functional)) +
                                        "]| = p ln zeta + a ln ln zeta + c",
                                    rows, y, {"p", "a", "c"});
  fit.abscissa = std::move(x);
  fit.notices = std::move(notices);
  return fit;
}

std::vector<double> default_region_zetas() { return log_spaced(1e3, 1e9, 13); }

nlohmann::json to_json(const RegionReport& report) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json contributions = nlohmann::json::object();
  for (const auto& [key, value] : report.contributions) contributions[key] = value;
  return {{"zeta", report.zeta},
          {"threshold", report.threshold},
          {"a", report.scaled.a},
          {"b", report.scaled.b},
          {"r_c", opt(report.r_c)},
          {"r_e", opt(report.r_e)},
          {"r_s", opt(report.r_s)},
          {"r_tau", opt(report.r_tau)},
          {"contributions", contributions}};
}

}  // namespace zetalab
