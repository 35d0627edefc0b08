#include "zetalab/atom_scf.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "zetalab/errors.hpp"
#include "zetalab/tf_atom.hpp"

namespace zetalab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRescale = 1e150;
constexpr double kEigenTolerance = 1e-10;
constexpr std::array<int, 6> kAtoms{2, 10, 18, 36, 54, 86};

std::string channel_name(int n, int l) {
  static constexpr char kLetters[] = "spdfghik";
  std::string s = std::to_string(n);
  s += (l >= 0 && l < 8) ? kLetters[l] : '?';
  return s;
}

// Numerov in x = ln r for f = u / sqrt(r): f'' = g f with
// g = (l + 1/2)^2 + 2 r^2 (V - E).
std::vector<double> numerov_g(const RadialGrid& grid, std::span<const double> v, int l,
                              double energy) {
  const double c = (l + 0.5) * (l + 0.5);
  std::vector<double> g(grid.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = grid.r(i);
    g[i] = c + 2.0 * r * r * (v[i] - energy);
  }
  return g;
}

// Outward integration to index `stop` (inclusive). Returns the node count;
// f is rescaled whenever it grows past kRescale.
int integrate_outward(const RadialGrid& grid, std::span<const double> g, int l, double Z,
                      std::size_t stop, std::vector<double>* out) {
  const double h2 = grid.step() * grid.step() / 12.0;
  const std::size_t n = grid.size();
  std::vector<double> f(n, 0.0);
  // Series start u ~ r^{l+1} (1 - Z r / (l + 1)).
  for (std::size_t i = 0; i < 2; ++i) {
    const double r = grid.r(i);
    f[i] = std::pow(r, l + 0.5) * (1.0 - Z * r / (l + 1.0));
  }
  int nodes = 0;
  for (std::size_t i = 1; i < stop; ++i) {
    // Deep in a forbidden region the step is too coarse for Numerov; the
    // solution only grows there, so counting can stop.
    if (h2 * g[i + 1] > 0.5) {
      for (std::size_t j = i + 1; j < n; ++j) f[j] = f[i];
      break;
    }
    f[i + 1] = (2.0 * f[i] * (1.0 + 5.0 * h2 * g[i]) - f[i - 1] * (1.0 - h2 * g[i - 1])) /
               (1.0 - h2 * g[i + 1]);
    if ((f[i + 1] < 0.0) != (f[i] < 0.0) && f[i + 1] != 0.0) ++nodes;
    if (std::abs(f[i + 1]) > kRescale) {
      for (std::size_t j = 0; j <= i + 1; ++j) f[j] /= kRescale;
    }
  }
  if (out) *out = std::move(f);
  return nodes;
}

}  // namespace

std::string Shell::label() const { return channel_name(n, l); }

double OrbitalSet::electron_count() const {
  double total = 0.0;
  for (const auto& s : shells) total += s.occupation;
  return total;
}

void ScfConfig::validate() const {
  if (!(mixing > 0.0 && mixing <= 1.0)) throw ParameterError("mixing must lie in (0, 1]");
  if (!(energy_tolerance > 0.0)) throw ParameterError("energy tolerance must be positive");
  if (max_iterations < 1) throw ParameterError("max_iterations must be at least 1");
  if (grid_points < 100) throw ParameterError("atomic grids need at least 100 points");
}

RadialGrid ScfConfig::grid_for(double Z) const {
  const double r_min = grid_r_min > 0.0 ? grid_r_min : 1e-6 / Z;
  return RadialGrid(GridKind::exponential, r_min, grid_r_max, grid_points);
}

std::span<const int> supported_atoms() { return kAtoms; }

bool is_supported_atom(int Z) {
  return std::find(kAtoms.begin(), kAtoms.end(), Z) != kAtoms.end();
}

std::vector<Shell> noble_gas_configuration(int Z) {
  if (!is_supported_atom(Z)) {
    throw ParameterError("no closed-shell configuration for Z = " + std::to_string(Z) +
                         " (supported: 2, 10, 18, 36, 54, 86)");
  }
  // Filling order of the noble-gas sequence.
  static constexpr std::array<std::array<int, 2>, 15> kOrder{{{1, 0},
                                                              {2, 0},
                                                              {2, 1},
                                                              {3, 0},
                                                              {3, 1},
                                                              {3, 2},
                                                              {4, 0},
                                                              {4, 1},
                                                              {4, 2},
                                                              {5, 0},
                                                              {5, 1},
                                                              {4, 3},
                                                              {5, 2},
                                                              {6, 0},
                                                              {6, 1}}};
  std::vector<Shell> shells;
  int remaining = Z;
  for (const auto& [n, l] : kOrder) {
    if (remaining == 0) break;
    const int occ = 2 * (2 * l + 1);
    Shell s;
    s.n = n;
    s.l = l;
    s.occupation = occ;
    shells.push_back(s);
    remaining -= occ;
  }
  std::sort(shells.begin(), shells.end(),
            [](const Shell& a, const Shell& b) { return a.l != b.l ? a.l < b.l : a.n < b.n; });
  return shells;
}

Shell solve_radial(const RadialGrid& grid, std::span<const double> potential, int n, int l) {
  if (grid.kind() != GridKind::exponential) {
    throw ParameterError("radial solver needs an exponential grid");
  }
  if (potential.size() != grid.size()) throw ShapeError("potential length differs from grid");
  if (l < 0 || n <= l) throw ParameterError("invalid channel " + channel_name(n, l));
  const std::size_t npts = grid.size();
  const int wanted = n - l - 1;

  // Nuclear charge seen at the origin, for the series start.
  const double Z = -potential[0] * grid.r(0);

  double lo = -Z * Z - 10.0;
  double hi = 0.0;
  auto count = [&](double e) {
    const auto g = numerov_g(grid, potential, l, e);
    return integrate_outward(grid, g, l, Z, npts - 1, nullptr);
  };
  if (count(hi) <= wanted) {
    throw SolverError("no bound state in channel " + channel_name(n, l) + " (" +
                      std::to_string(count(hi)) + " nodes at E = 0)");
  }
  // Sturm bisection: count(E) is the number of Dirichlet eigenvalues below E.
  for (int k = 0; count(lo) > wanted; ++k) {
    if (k == 20) throw SolverError("eigenvalue search failed in channel " + channel_name(n, l));
    lo *= 2.0;
  }
  while (hi - lo > kEigenTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (count(mid) > wanted) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double energy = 0.5 * (lo + hi);
  const auto g = numerov_g(grid, potential, l, energy);

  // Match at the outermost classical turning point.
  std::size_t turn = npts - 1;
  while (turn > 2 && g[turn] > 0.0) --turn;
  turn = std::clamp<std::size_t>(turn, 2, npts - 3);
  std::vector<double> f;
  integrate_outward(grid, g, l, Z, turn + 1, &f);

  // Inward from where the WKB decay has reached ~e^{-50}.
  const double h = grid.step();
  std::size_t end = turn;
  double exponent = 0.0;
  while (end < npts - 1 && exponent < 50.0) {
    exponent += std::sqrt(std::max(g[end], 0.0)) * h;
    ++end;
  }
  if (end > turn + 2) {
    const double h2 = h * h / 12.0;
    std::vector<double> fin(npts, 0.0);
    fin[end] = 1e-30;
    fin[end - 1] = fin[end] * std::exp(std::sqrt(std::max(g[end - 1], 0.0)) * h);
    for (std::size_t i = end - 1; i > turn; --i) {
      fin[i - 1] = (2.0 * fin[i] * (1.0 + 5.0 * h2 * g[i]) - fin[i + 1] * (1.0 - h2 * g[i + 1])) /
                   (1.0 - h2 * g[i - 1]);
      if (std::abs(fin[i - 1]) > kRescale) {
        for (std::size_t j = i - 1; j <= end; ++j) fin[j] /= kRescale;
      }
    }
    const double ratio = f[turn] / fin[turn];
    for (std::size_t i = turn; i < npts; ++i) f[i] = fin[i] * ratio;
  }

  Shell s;
  s.n = n;
  s.l = l;
  s.eigenvalue = energy;
  s.u.resize(npts);
  std::vector<double> u2(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    s.u[i] = f[i] * std::sqrt(grid.r(i));
    u2[i] = s.u[i] * s.u[i];
  }
  const double norm = std::sqrt(grid.integrate(u2));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw SolverError("could not normalize channel " + channel_name(n, l));
  }
  for (double& x : s.u) x /= norm;
  // Sign convention: positive near the origin.
  if (s.u[1] < 0.0) {
    for (double& x : s.u) x = -x;
  }
  return s;
}

std::vector<double> orbital_density(const OrbitalSet& orbs) {
  std::vector<double> n(orbs.grid.size(), 0.0);
  for (const auto& s : orbs.shells) {
    for (std::size_t i = 0; i < n.size(); ++i) n[i] += s.occupation * s.u[i] * s.u[i];
  }
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double r = orbs.grid.r(i);
    n[i] /= 4.0 * kPi * r * r;
  }
  return n;
}

namespace {

std::vector<double> hartree_potential(const RadialGrid& grid, std::span<const double> n) {
  const std::size_t npts = grid.size();
  std::vector<double> inner(npts), outer(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    const double r = grid.r(i);
    inner[i] = 4.0 * kPi * r * r * n[i];
    outer[i] = 4.0 * kPi * r * n[i];
  }
  const auto q = grid.cumulative(inner);
  const auto p = grid.cumulative(outer);
  std::vector<double> v(npts);
  for (std::size_t i = 0; i < npts; ++i) v[i] = q[i] / grid.r(i) + (p.back() - p[i]);
  return v;
}

struct Potential {
  std::vector<double> total;
  std::vector<double> hartree;
  std::vector<double> xc;
};

Potential ks_potential(const RadialGrid& grid, std::span<const double> n, double Z) {
  Potential pot;
  pot.hartree = hartree_potential(grid, n);
  pot.xc.resize(grid.size());
  pot.total.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    pot.xc[i] = xc::lda_xc_potential(n[i]);
    pot.total[i] = -Z / grid.r(i) + pot.hartree[i] + pot.xc[i];
  }
  return pot;
}

// Energy of the output density: T_S from the eigenvalues of the input
// potential plus explicit potential-energy functionals of n_out.
AtomEnergies total_energy(const OrbitalSet& orbs, std::span<const double> v_in,
                          std::span<const double> n_out) {
  const RadialGrid& grid = orbs.grid;
  const std::size_t npts = grid.size();
  AtomEnergies e;
  for (const auto& s : orbs.shells) e.eigenvalue_sum += s.occupation * s.eigenvalue;
  const auto vh = hartree_potential(grid, n_out);
  std::vector<double> nv(npts), nuc(npts), har(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    const double w = 4.0 * kPi * grid.r(i) * grid.r(i) * n_out[i];
    nv[i] = w * v_in[i];
    nuc[i] = -orbs.Z * w / grid.r(i);
    har[i] = 0.5 * w * vh[i];
  }
  e.kinetic = e.eigenvalue_sum - grid.integrate(nv);
  e.nuclear = grid.integrate(nuc);
  e.hartree = grid.integrate(har);
  const RadialDensity d = RadialDensity::from_samples(grid, std::vector<double>(n_out.begin(), n_out.end()));
  e.exchange_correlation = lda_exchange(d).energy + lda_correlation(d).energy;
  e.total = e.kinetic + e.nuclear + e.hartree + e.exchange_correlation;
  return e;
}

}  // namespace

AtomResult solve_atom(int Z, const ScfConfig& cfg) {
  cfg.validate();
  OrbitalSet orbs{cfg.grid_for(Z), static_cast<double>(Z), noble_gas_configuration(Z)};
  const RadialGrid& grid = orbs.grid;
  const std::size_t npts = grid.size();

  // Start from the screened Thomas-Fermi potential.
  const TFSolution tf = solve_universal_tf();
  const double b = tf_length_scale(Z);
  std::vector<double> v(npts);
  for (std::size_t i = 0; i < npts; ++i) v[i] = -Z * tf.phi(grid.r(i) / b) / grid.r(i);

  std::vector<double> n_in;
  std::vector<double> trace;
  AtomEnergies energies;
  bool converged = false;
  int iter = 0;
  for (iter = 1; iter <= cfg.max_iterations; ++iter) {
    for (auto& s : orbs.shells) {
      const double occ = s.occupation;
      s = solve_radial(grid, v, s.n, s.l);
      s.occupation = occ;
    }
    const auto n_out = orbital_density(orbs);
    energies = total_energy(orbs, v, n_out);
    trace.push_back(energies.total);
    if (trace.size() >= 2 && std::abs(trace.back() - trace[trace.size() - 2]) < cfg.energy_tolerance) {
      converged = true;
      n_in = n_out;
      break;
    }
    if (n_in.empty()) {
      n_in = n_out;
    } else {
      for (std::size_t i = 0; i < npts; ++i) {
        n_in[i] = (1.0 - cfg.mixing) * n_in[i] + cfg.mixing * n_out[i];
      }
    }
    v = ks_potential(grid, n_in, Z).total;
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "SCF for Z = " << Z << " did not converge in " << cfg.max_iterations
        << " iterations; last energies:";
    const std::size_t first = trace.size() > 5 ? trace.size() - 5 : 0;
    msg.precision(12);
    for (std::size_t i = first; i < trace.size(); ++i) msg << ' ' << trace[i];
    throw SolverError(msg.str());
  }

  // Orbitals are those of the final input potential; the density is theirs.
  auto kin = kinetic_energy_densities(orbs);
  RadialDensity d = RadialDensity::from_samples(grid, orbital_density(orbs))
                        .with_kinetic_densities(std::move(kin.tau), std::move(kin.tau_prime));
  AtomResult result{std::move(orbs), std::move(d), energies.total, energies, iter, std::move(trace)};
  return result;
}

KineticDensities kinetic_energy_densities(const OrbitalSet& orbs) {
  const RadialGrid& grid = orbs.grid;
  const std::size_t npts = grid.size();
  KineticDensities k{std::vector<double>(npts, 0.0), std::vector<double>(npts, 0.0)};
  std::vector<double> u2(npts);
  for (const auto& s : orbs.shells) {
    if (s.u.size() != npts) throw ShapeError("orbital " + s.label() + " length differs from grid");
    for (std::size_t i = 0; i < npts; ++i) u2[i] = s.u[i] * s.u[i];
    const double norm = grid.integrate(u2);
    if (std::abs(norm - 1.0) > 1e-6) {
      throw DomainError("orbital " + s.label() + " is not normalized (norm " +
                        std::to_string(norm) + ")");
    }
    const auto du = grid.differentiate(s.u, 1);
    const auto d2u = grid.differentiate(s.u, 2);
    const double ll = s.l * (s.l + 1.0);
    for (std::size_t i = 0; i < npts; ++i) {
      const double r = grid.r(i);
      const double rr = r * r;
      // R = u / r, R' = (u' - u / r) / r.
      const double dR = (du[i] - s.u[i] / r) / r;
      const double R = s.u[i] / r;
      k.tau[i] += s.occupation / (4.0 * kPi) * 0.5 * (dR * dR + ll * R * R / rr);
      k.tau_prime[i] +=
          s.occupation / (8.0 * kPi * rr) * (-s.u[i] * d2u[i] + ll * s.u[i] * s.u[i] / rr);
    }
  }
  return k;
}

double kinetic_energy(const OrbitalSet& orbs) {
  const RadialGrid& grid = orbs.grid;
  double total = 0.0;
  std::vector<double> f(grid.size());
  for (const auto& s : orbs.shells) {
    const auto du = grid.differentiate(s.u, 1);
    const double ll = s.l * (s.l + 1.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double r = grid.r(i);
      f[i] = 0.5 * (du[i] * du[i] + ll * s.u[i] * s.u[i] / (r * r));
    }
    total += s.occupation * grid.integrate(f);
  }
  return total;
}

SProfile s_profile(const RadialDensity& d, double Z) {
  if (!(Z > 0.0)) throw ParameterError("Z must be positive");
  const ReducedGradients rg = reduced_gradients(d);
  SProfile p;
  const double scale = std::cbrt(Z);
  for (std::size_t i = 0; i < rg.s.size(); ++i) {
    if (!rg.valid[i]) continue;
    p.scaled_r.push_back(scale * d.grid().r(i));
    p.s.push_back(rg.s[i]);
  }
  if (!p.s.empty()) p.s_origin = p.s.front();
  return p;
}

double TableRow::energy(FunctionalId id) const {
  for (const auto& [key, value] : energies) {
    if (key == id) return value;
  }
  throw ParameterError("table row has no entry for " + std::string(to_string(id)));
}

TableRow table_row(const AtomResult& atom) {
  TableRow row;
  row.Z = static_cast<int>(std::lround(atom.orbitals.Z));
  for (FunctionalId id : kAllFunctionals) {
    row.energies.emplace_back(id, evaluate(id, atom.density).energy);
  }
  row.kinetic_ks = kinetic_energy(atom.orbitals);
  row.kinetic_tf = row.energy(FunctionalId::tf);
  row.kinetic_vw9 = row.energy(FunctionalId::vw9);
  row.kinetic_gea4 = row.energy(FunctionalId::gea4);
  row.total_energy = atom.total_energy;
  return row;
}

TableRow table_row(int Z) { return table_row(solve_atom(Z)); }

void save_orbitals(const OrbitalSet& orbs, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path.string());
  out.precision(17);
  out << "# zetalab orbitals\n# Z = " << orbs.Z << '\n';
  for (const auto& s : orbs.shells) {
    out << "# shell " << s.label() << " occupation = " << s.occupation
        << " eigenvalue = " << s.eigenvalue << '\n';
  }
  out << 'r';
  for (const auto& s : orbs.shells) out << ",u_" << s.label();
  out << '\n';
  for (std::size_t i = 0; i < orbs.grid.size(); ++i) {
    out << orbs.grid.r(i);
    for (const auto& s : orbs.shells) out << ',' << s.u[i];
    out << '\n';
  }
  if (!out) throw ParameterError("failed writing " + path.string());
}

}  // namespace zetalab
