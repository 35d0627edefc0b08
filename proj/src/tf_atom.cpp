#include "zetalab/tf_atom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

constexpr double kPi = std::numbers::pi;

// Stable eigenvalue of the linearization around w = 144.
const double kStableRate = (7.0 - std::sqrt(73.0)) / 2.0;

constexpr double kTauStep = 5e-4;
constexpr double kManifoldOffset = -1e-8;  // (w - 144) / 144 at the start
constexpr double kCoreSwitchW = 1e-6;      // switch to the u = sqrt(x) table below this w
constexpr std::size_t kCoreSteps = 4000;

using State = std::array<double, 2>;

double pow32(double v) { return v > 0.0 ? v * std::sqrt(v) : 0.0; }

// d/dtau (w, w').
State autonomous_rhs(const State& s) {
  return {s[1], 7.0 * s[1] - 12.0 * s[0] + pow32(s[0])};
}

// d/du (phi, phi') with x = u^2.
State core_rhs(double u, const State& s) { return {2.0 * u * s[1], 2.0 * pow32(s[0])}; }

template <class F>
State rk4(const F& f, const State& y, double h) {
  auto axpy = [](const State& a, double c, const State& b) {
    return State{a[0] + c * b[0], a[1] + c * b[1]};
  };
  const State k1 = f(y);
  const State k2 = f(axpy(y, 0.5 * h, k1));
  const State k3 = f(axpy(y, 0.5 * h, k2));
  const State k4 = f(axpy(y, h, k3));
  return {y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
          y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

State rk4_u(double u, const State& y, double h) {
  auto axpy = [](const State& a, double c, const State& b) {
    return State{a[0] + c * b[0], a[1] + c * b[1]};
  };
  const State k1 = core_rhs(u, y);
  const State k2 = core_rhs(u + 0.5 * h, axpy(y, 0.5 * h, k1));
  const State k3 = core_rhs(u + 0.5 * h, axpy(y, 0.5 * h, k2));
  const State k4 = core_rhs(u + h, axpy(y, h, k3));
  return {y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
          y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

double hermite(double t, double h, double y0, double y1, double d0, double d1) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * h * d1;
}

// -1: phi crossed zero (slope too steep), +1: phi turned upward, 0: neither.
int classify_slope(double slope) {
  constexpr double du = 1e-3;
  constexpr double u_max = 30.0;
  State y{1.0, slope};
  double u = 0.0;
  while (u < u_max) {
    y = rk4_u(u, y, du);
    u += du;
    if (y[0] < 0.0) return -1;
    if (y[1] > 0.0) return +1;
  }
  return 0;
}

double pw92_log_coefficient() {
  const double r1 = 1e-10;
  const double r2 = 1e-12;
  return (xc::pw92(r1).eps - xc::pw92(r2).eps) / std::log(r1 / r2);
}

}  // namespace

double TFSolution::phi(double x) const {
  if (x <= 0.0) return 1.0;
  const double u = std::sqrt(x);
  const double u_switch = u_step_ * static_cast<double>(core_phi_.size() - 1);
  if (u <= u_switch) {
    const double pos = u / u_step_;
    const auto k = std::min(static_cast<std::size_t>(pos), core_phi_.size() - 2);
    const double t = pos - static_cast<double>(k);
    const double u0 = u_step_ * static_cast<double>(k);
    return hermite(t, u_step_, core_phi_[k], core_phi_[k + 1], 2.0 * u0 * core_dphi_[k],
                   2.0 * (u0 + u_step_) * core_dphi_[k + 1]);
  }
  const double tau = std::log(x);
  const double pos = (tau - tau_start_) / tau_step_;
  if (pos >= static_cast<double>(w_.size() - 1)) return 144.0 / (x * x * x);
  const auto k = static_cast<std::size_t>(std::max(0.0, pos));
  const double t = pos - static_cast<double>(k);
  const double w = hermite(t, tau_step_, w_[k], w_[k + 1], v_[k], v_[k + 1]);
  return w / (x * x * x);
}

double TFSolution::dphi(double x) const {
  if (x <= 0.0) return slope_origin_;
  const double u = std::sqrt(x);
  const double u_switch = u_step_ * static_cast<double>(core_phi_.size() - 1);
  if (u <= u_switch) {
    const double pos = u / u_step_;
    const auto k = std::min(static_cast<std::size_t>(pos), core_phi_.size() - 2);
    const double t = pos - static_cast<double>(k);
    return hermite(t, u_step_, core_dphi_[k], core_dphi_[k + 1], 2.0 * pow32(core_phi_[k]),
                   2.0 * pow32(core_phi_[k + 1]));
  }
  const double tau = std::log(x);
  const double pos = (tau - tau_start_) / tau_step_;
  if (pos >= static_cast<double>(w_.size() - 1)) return -432.0 / (x * x * x * x);
  const auto k = static_cast<std::size_t>(std::max(0.0, pos));
  const double t = pos - static_cast<double>(k);
  const double w = hermite(t, tau_step_, w_[k], w_[k + 1], v_[k], v_[k + 1]);
  const auto a0 = autonomous_rhs({w_[k], v_[k]})[1];
  const auto a1 = autonomous_rhs({w_[k + 1], v_[k + 1]})[1];
  const double v = hermite(t, tau_step_, v_[k], v_[k + 1], a0, a1);
  return (v - 3.0 * w) / (x * x * x * x);
}

std::vector<double> TFSolution::sample_x(std::size_t n_points, double x_min, double x_max) const {
  return log_spaced(x_min, x_max, n_points);
}

double shoot_initial_slope(double tolerance, double lo, double hi) {
  if (!(tolerance > 0.0)) throw ParameterError("shooting tolerance must be positive");
  const int c_lo = classify_slope(lo);
  const int c_hi = classify_slope(hi);
  if (c_lo != -1 || c_hi != +1) {
    std::ostringstream msg;
    msg << "TF shooting bracket [" << lo << ", " << hi << "] does not straddle the neutral-atom "
        << "slope (classes " << c_lo << ", " << c_hi << ")";
    throw SolverError(msg.str());
  }
  for (int iter = 0; iter < 200 && hi - lo > tolerance; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const int c = classify_slope(mid);
    if (c == 0) return mid;
    (c < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TFSolution solve_universal_tf(double tolerance) {
  if (!(tolerance > 0.0)) throw ParameterError("TF tolerance must be positive");
  TFSolution sol;

  // Stable manifold of w = 144, integrated towards small x in raw units.
  std::vector<State> path;
  State y{144.0 * (1.0 + kManifoldOffset), 144.0 * kManifoldOffset * kStableRate};
  path.push_back(y);
  const auto rhs = [](const State& s) { return autonomous_rhs(s); };
  while (y[0] > kCoreSwitchW) {
    y = rk4(rhs, y, -kTauStep);
    path.push_back(y);
    if (path.size() > 400000) throw SolverError("TF manifold integration did not reach the core");
  }
  const double tau_end_raw = -kTauStep * static_cast<double>(path.size() - 1);

  // Core: phi and phi' in raw units, integrated in u = sqrt(x) down to u = 0.
  const double x_switch = std::exp(tau_end_raw);
  const double w_s = path.back()[0];
  const double v_s = path.back()[1];
  State core{w_s / (x_switch * x_switch * x_switch),
             (v_s - 3.0 * w_s) / (x_switch * x_switch * x_switch * x_switch)};
  const double u_switch = std::sqrt(x_switch);
  const double du = u_switch / static_cast<double>(kCoreSteps);
  std::vector<State> core_path{core};
  for (std::size_t j = 0; j < kCoreSteps; ++j) {
    const double u = u_switch - du * static_cast<double>(j);
    core = rk4_u(u, core, -du);
    core_path.push_back(core);
  }
  const double phi0_raw = core_path.back()[0];
  const double slope_raw = core_path.back()[1];
  if (!(phi0_raw > 0.0) || !std::isfinite(phi0_raw)) {
    throw SolverError("TF core integration produced a non-positive phi(0)");
  }

  // phi(x) = l^3 phi_raw(l x) with l^3 phi_raw(0) = 1.
  const double lambda = std::cbrt(1.0 / phi0_raw);
  const double l3 = lambda * lambda * lambda;
  sol.slope_origin_ = l3 * lambda * slope_raw;

  sol.tau_step_ = kTauStep;
  sol.tau_start_ = tau_end_raw - std::log(lambda);
  sol.w_.resize(path.size());
  sol.v_.resize(path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    sol.w_[k] = path[path.size() - 1 - k][0];
    sol.v_[k] = path[path.size() - 1 - k][1];
  }
  sol.u_step_ = du / std::sqrt(lambda);
  sol.core_phi_.resize(core_path.size());
  sol.core_dphi_.resize(core_path.size());
  for (std::size_t j = 0; j < core_path.size(); ++j) {
    const auto& s = core_path[core_path.size() - 1 - j];
    sol.core_phi_[j] = l3 * s[0];
    sol.core_dphi_[j] = l3 * lambda * s[1];
  }
  sol.core_phi_.front() = 1.0;

  sol.shooting_slope_ = shoot_initial_slope(tolerance);
  const double gap = std::abs(sol.shooting_slope_ - sol.slope_origin_);
  if (gap > std::max(1e-8, 10.0 * tolerance)) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "TF initial slope disagrees between shooting (" << sol.shooting_slope_
        << ") and manifold integration (" << sol.slope_origin_ << ")";
    throw SolverError(msg.str());
  }
  return sol;
}

double tf_length_scale(double Z) {
  if (!(Z > 0.0)) throw ParameterError("nuclear charge must be positive");
  return 0.5 * std::pow(0.75 * kPi, 2.0 / 3.0) / std::cbrt(Z);
}

RadialGrid tf_default_grid(double Z) {
  const double b = tf_length_scale(Z);
  return RadialGrid(GridKind::exponential, 1e-6 / Z, 1e4 * b, 1200);
}

RadialDensity tf_density(const TFSolution& sol, double Z) {
  return tf_density(sol, Z, tf_default_grid(Z));
}

RadialDensity tf_density(const TFSolution& sol, double Z, const RadialGrid& grid) {
  const double b = tf_length_scale(Z);
  std::vector<double> n(grid.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double r = grid.r(i);
    const double phi = std::max(0.0, sol.phi(r / b));
    n[i] = std::pow(2.0 * Z * phi / r, 1.5) / (3.0 * kPi * kPi);
  }
  return RadialDensity::from_samples(grid, std::move(n));
}

TFEnergy tf_energy_components(const TFSolution& sol, double Z) {
  const RadialDensity d = tf_density(sol, Z);
  const auto& g = d.grid();
  const auto rho = d.radial_distribution();
  std::vector<double> rho_over_r(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho_over_r[i] = rho[i] / g.r(i);

  const auto inner = g.cumulative(rho);
  const auto outer_running = g.cumulative(rho_over_r);
  const double outer_total = g.integrate(rho_over_r);
  std::vector<double> hartree_integrand(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double v_h = inner[i] / g.r(i) + (outer_total - outer_running[i]);
    hartree_integrand[i] = 0.5 * rho[i] * v_h;
  }

  TFEnergy e;
  e.kinetic = tf_kinetic(d).energy;
  e.nuclear = -Z * outer_total;
  e.hartree = g.integrate(hartree_integrand);
  e.total = e.kinetic + e.nuclear + e.hartree;
  e.slope_formula = 3.0 / 7.0 * Z * Z * sol.slope_origin() / tf_length_scale(Z);
  return e;
}

double tf_total_energy(const TFSolution& sol, double Z) {
  const TFEnergy e = tf_energy_components(sol, Z);
  if (std::abs(e.total - e.slope_formula) > 2e-3 * std::abs(e.slope_formula)) {
    std::ostringstream msg;
    msg << "TF energy assembly (" << e.total << ") disagrees with slope formula ("
        << e.slope_formula << ") by more than 0.2%";
    throw SolverError(msg.str());
  }
  return e.total;
}

double lda_x_on_tf(const TFSolution& sol, double Z) {
  return lda_exchange(tf_density(sol, Z)).energy;
}

AsymptoticFit correlation_asymptotics(const TFSolution& sol, FunctionalId functional,
                                      std::span<const double> zeta_list,
                                      std::size_t correction_terms) {
  if (functional != FunctionalId::lda_c && functional != FunctionalId::pbe_c) {
    throw ParameterError("correlation asymptotics support lda_c and pbe_c only");
  }
  if (correction_terms > kMaxCorrectionTerms) {
    throw ParameterError("at most " + std::to_string(kMaxCorrectionTerms) +
                         " correction terms are available");
  }
  if (zeta_list.size() < 8) throw FitError("correlation asymptotics need at least 8 zeta values");
  if (zeta_list.size() < correction_terms + 4) {
    throw FitError("too few zeta values for " + std::to_string(correction_terms) +
                   " correction terms");
  }
  const auto [lo, hi] = std::minmax_element(zeta_list.begin(), zeta_list.end());
  if (!(*lo > 0.0) || *hi / *lo < 100.0) {
    throw FitError("zeta list must be positive and span at least two decades");
  }

  // Corrections follow the small-r_s expansion of the correlation energy per
  // particle, r_s ~ zeta^{-2/3}: r_s ln r_s, r_s, r_s^{3/2} (plus its log), r_s^2.
  static const std::array<std::pair<const char*, double (*)(double)>, kMaxCorrectionTerms> terms{{
      {"c1", [](double z) { return std::pow(z, -2.0 / 3.0) * std::log(z); }},
      {"c2", [](double z) { return std::pow(z, -2.0 / 3.0); }},
      {"c3", [](double z) { return 1.0 / z; }},
      {"c4", [](double z) { return std::log(z) / z; }},
      {"c5", [](double z) { return std::pow(z, -4.0 / 3.0); }},
  }};
  std::vector<std::string> names{"A_C", "B_C"};
  for (std::size_t k = 0; k < correction_terms; ++k) names.emplace_back(terms[k].first);

  std::vector<std::vector<double>> rows;
  std::vector<double> y;
  for (double zeta : zeta_list) {
    const double e = evaluate(functional, tf_density(sol, zeta)).energy;
    std::vector<double> row{std::log(zeta), 1.0};
    for (std::size_t k = 0; k < correction_terms; ++k) row.push_back(terms[k].second(zeta));
    rows.push_back(std::move(row));
    y.push_back(e / zeta);
  }
  AsymptoticFit fit = least_squares("E_C/zeta = A_C ln(zeta) + B_C + " +
                                        std::to_string(correction_terms) + " corrections [" +
                                        std::string(to_string(functional)) + " on TF]",
                                    rows, y, names);
  fit.abscissa.assign(zeta_list.begin(), zeta_list.end());
  return fit;
}

CorrelationLimit correlation_high_density_limit(const TFSolution& sol, FunctionalId functional) {
  if (functional != FunctionalId::lda_c && functional != FunctionalId::pbe_c) {
    throw ParameterError("correlation limit supports lda_c and pbe_c only");
  }
  const double a = pw92_log_coefficient();
  const double rs_small = 1e-12;
  const double c = xc::pw92(rs_small).eps - a * std::log(rs_small);

  const RadialDensity d = tf_density(sol, 1.0);
  const auto n = d.n();
  const auto& g = d.grid();
  std::vector<double> log_rs(n.size(), 0.0);
  std::vector<double> gradient(n.size(), 0.0);
  const ReducedGradients rg = reduced_gradients(d);
  const double gamma = (1.0 - std::numbers::ln2) / (kPi * kPi);
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] <= 0.0) continue;
    const double weight = 4.0 * kPi * g.r(i) * g.r(i) * n[i];
    log_rs[i] = weight * std::log(xc::wigner_seitz_radius(n[i]));
    if (rg.valid[i]) {
      gradient[i] = weight * gamma * std::log1p(kBetaMB * rg.t[i] * rg.t[i] / gamma);
    }
  }
  const double electrons = d.n_electrons();
  CorrelationLimit out;
  out.a_c = -2.0 / 3.0 * a * electrons;
  out.b_c = a * g.integrate(log_rs) + c * electrons;
  if (functional == FunctionalId::pbe_c) out.b_c += g.integrate(gradient);
  return out;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo) || n == 0) throw ParameterError("invalid log-spaced range");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.back() = hi;
  return out;
}

}  // namespace zetalab
