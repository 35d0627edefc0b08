#include "zetalab/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

constexpr double kPi = std::numbers::pi;

void track(double& abs_max, double& rel_max, double& mixed_max, double value, double reference) {
  const double diff = std::abs(value - reference);
  abs_max = std::max(abs_max, diff);
  const double scale = std::abs(reference);
  if (scale > 0.0) rel_max = std::max(rel_max, diff / scale);
  mixed_max = std::max(mixed_max, diff / std::max(1.0, scale));
}

}  // namespace

RadialDensity::RadialDensity(RadialGrid grid, std::vector<double> n)
    : grid_(std::move(grid)), n_(std::move(n)) {
  if (n_.size() != grid_.size()) throw ShapeError("density samples do not match grid length");
  for (std::size_t i = 0; i < n_.size(); ++i) {
    if (!std::isfinite(n_[i]) || n_[i] < 0.0) {
      throw DomainError("density sample " + std::to_string(i) + " is negative or not finite");
    }
  }
  dn_ = grid_.differentiate(n_, 1);
  d2n_ = grid_.differentiate(n_, 2);
  n_electrons_ = grid_.integrate(radial_distribution());
}

RadialDensity RadialDensity::from_samples(RadialGrid grid, std::vector<double> n) {
  return RadialDensity(std::move(grid), std::move(n));
}

RadialDensity from_samples(RadialGrid grid, std::vector<double> n) {
  return RadialDensity::from_samples(std::move(grid), std::move(n));
}

RadialDensity RadialDensity::with_kinetic_densities(std::vector<double> tau,
                                                    std::vector<double> tau_prime) const {
  if (tau.size() != n_.size() || tau_prime.size() != n_.size()) {
    throw ShapeError("kinetic-energy density length does not match grid");
  }
  for (double v : tau) {
    if (!(v >= 0.0)) throw DomainError("positive kinetic-energy density has a negative sample");
  }
  RadialDensity copy = *this;
  copy.tau_ = std::move(tau);
  copy.tau_prime_ = std::move(tau_prime);
  return copy;
}

std::vector<double> RadialDensity::laplacian() const {
  std::vector<double> out(n_.size());
  const auto r = grid_.r();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = d2n_[i] + 2.0 * dn_[i] / r[i];
  return out;
}

std::vector<double> RadialDensity::radial_distribution() const {
  std::vector<double> out(n_.size());
  const auto r = grid_.r();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 4.0 * kPi * r[i] * r[i] * n_[i];
  return out;
}

ReducedGradients reduced_gradients(const RadialDensity& d) {
  const std::size_t size = d.n().size();
  ReducedGradients g;
  g.s.assign(size, 0.0);
  g.q.assign(size, 0.0);
  g.t.assign(size, 0.0);
  g.k_F.assign(size, 0.0);
  g.k_s.assign(size, 0.0);
  g.valid.assign(size, 0);

  const auto n = d.n();
  const auto dn = d.dn();
  const auto lap = d.laplacian();
  bool any = false;
  for (std::size_t i = 0; i < size; ++i) {
    if (n[i] < kDensityFloor) continue;
    any = true;
    const double kf = std::cbrt(3.0 * kPi * kPi * n[i]);
    const double ks = std::sqrt(4.0 * kf / kPi);
    g.k_F[i] = kf;
    g.k_s[i] = ks;
    g.s[i] = std::abs(dn[i]) / (2.0 * kf * n[i]);
    g.q[i] = lap[i] / (4.0 * kf * kf * n[i]);
    g.t[i] = std::abs(dn[i]) / (2.0 * ks * n[i]);
    g.valid[i] = 1;
  }
  if (!any) throw DomainError("density vanishes everywhere; reduced gradients undefined");
  return g;
}

RadialDensity zeta_scale(const RadialDensity& d, double zeta) {
  if (!(zeta > 0.0) || !std::isfinite(zeta)) throw ParameterError("zeta must be positive");
  const double shrink = 1.0 / std::cbrt(zeta);
  RadialGrid grid = d.grid().scaled(shrink);
  std::vector<double> n(d.n().begin(), d.n().end());
  for (double& v : n) v *= zeta * zeta;
  return RadialDensity::from_samples(std::move(grid), std::move(n));
}

RadialDensity zeta_scale(const RadialDensity& d, double zeta, const RadialGrid& target) {
  if (!(zeta > 0.0) || !std::isfinite(zeta)) throw ParameterError("zeta must be positive");
  // n_zeta on target = zeta^2 n(zeta^{1/3} r): resample n onto the stretched
  // target, then rescale values and radii together.
  const double stretch = std::cbrt(zeta);
  const RadialDensity on_stretched = resample(d, target.scaled(stretch));
  std::vector<double> n(on_stretched.n().begin(), on_stretched.n().end());
  for (double& v : n) v *= zeta * zeta;
  return RadialDensity::from_samples(target, std::move(n));
}

RadialDensity resample(const RadialDensity& d, const RadialGrid& target) {
  const auto& src = d.grid();
  const auto n = d.n();
  std::vector<double> log_n(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    log_n[i] = n[i] > kDensityFloor ? std::log(n[i]) : std::log(kDensityFloor);
  }
  std::vector<double> out(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double r = target.r(i);
    if (r <= src.r_min()) {
      out[i] = n.front();
    } else if (r > src.r_max()) {
      out[i] = 0.0;
    } else {
      const std::size_t k = src.locate(r);
      const std::size_t lo = k >= 3 ? k - 3 : 0;
      const std::size_t hi = std::min(k + 3, n.size() - 1);
      bool all_above = true;
      for (std::size_t j = lo; j <= hi; ++j) all_above = all_above && n[j] > kDensityFloor;
      out[i] = all_above ? std::exp(src.interpolate(log_n, r))
                         : std::max(0.0, src.interpolate(n, r));
    }
  }
  return RadialDensity::from_samples(target, std::move(out));
}

double ScalingLawReport::max_abs() const {
  return std::max({s_law_abs, q_law_abs, t_law_abs});
}

double ScalingLawReport::max_deviation() const { return std::max(mixed, electron_number_rel); }

ScalingLawReport verify_scaling_laws(const RadialDensity& d, double zeta) {
  const RadialDensity scaled = zeta_scale(d, zeta);
  const ReducedGradients base = reduced_gradients(d);
  const ReducedGradients sc = reduced_gradients(scaled);

  ScalingLawReport report;
  report.zeta = zeta;
  const double expected_n = zeta * d.n_electrons();
  report.electron_number_rel =
      expected_n > 0.0 ? std::abs(scaled.n_electrons() - expected_n) / expected_n
                       : std::abs(scaled.n_electrons());

  const double c1 = std::cbrt(zeta);
  const double c2 = c1 * c1;
  for (std::size_t i = 0; i < base.s.size(); ++i) {
    if (!base.valid[i] || !sc.valid[i]) continue;
    ++report.compared_points;
    track(report.s_law_abs, report.s_law_rel, report.mixed, sc.s[i], base.s[i] / c1);
    track(report.q_law_abs, report.q_law_rel, report.mixed, sc.q[i], base.q[i] / c2);
    track(report.t_law_abs, report.t_law_rel, report.mixed, sc.t[i], base.t[i]);
  }
  return report;
}

}  // namespace zetalab
