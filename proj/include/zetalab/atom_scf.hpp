#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "zetalab/density.hpp"
#include "zetalab/functionals.hpp"
#include "zetalab/radial_grid.hpp"

namespace zetalab {

struct Shell {
  int n = 1;
  int l = 0;
  double occupation = 0.0;
  double eigenvalue = 0.0;  // hartree
  std::vector<double> u;    // r R(r) on the orbital set's grid

  /// Spectroscopic label such as "3d".
  std::string label() const;
};

/// Occupied Kohn-Sham shells of a spherical atom on one radial grid.
struct OrbitalSet {
  RadialGrid grid;
  double Z = 0.0;
  std::vector<Shell> shells;

  double electron_count() const;
};

struct ScfConfig {
  int max_iterations = 200;
  double mixing = 0.3;
  double energy_tolerance = 1e-8;  // hartree
  // Grid; grid_r_min <= 0 selects 1e-6 / Z.
  double grid_r_min = 0.0;
  double grid_r_max = 50.0;
  std::size_t grid_points = 1200;

  /// Throws ParameterError for mixing outside (0, 1], tolerance <= 0 or
  /// max_iterations < 1.
  void validate() const;
  RadialGrid grid_for(double Z) const;
};

struct AtomEnergies {
  double total = 0.0;
  double kinetic = 0.0;
  double nuclear = 0.0;
  double hartree = 0.0;
  double exchange_correlation = 0.0;
  double eigenvalue_sum = 0.0;
};

struct AtomResult {
  OrbitalSet orbitals;
  RadialDensity density;  // carries tau and tau_prime
  double total_energy = 0.0;
  AtomEnergies energies;
  int iterations = 0;
  std::vector<double> energy_trace;  // total energy per SCF iteration
};

/// Atomic numbers with a built-in closed-shell configuration.
std::span<const int> supported_atoms();
bool is_supported_atom(int Z);

/// (n, l, occupation) triples of the noble-gas configuration. Throws
/// ParameterError for unsupported Z.
std::vector<Shell> noble_gas_configuration(int Z);

/// Lowest-but-(n - l - 1) eigenpair of -u''/2 + [l(l+1)/(2r^2) + V] u = E u
/// on an exponential grid, with u normalized. Throws SolverError naming the
/// channel if no such bound state exists below zero.
Shell solve_radial(const RadialGrid& grid, std::span<const double> potential, int n, int l);

/// Spin-restricted KS-LDA (Slater exchange, PW92 correlation) for a noble
/// gas atom. Throws ParameterError for unsupported Z or config, and
/// SolverError on non-convergence (message carries the energy trace).
AtomResult solve_atom(int Z, const ScfConfig& cfg = {});

/// Density sum_i occ_i u_i^2 / (4 pi r^2).
std::vector<double> orbital_density(const OrbitalSet& orbs);

struct KineticDensities {
  std::vector<double> tau;        // sum occ |grad psi|^2 / 2
  std::vector<double> tau_prime;  // sum occ psi (-lap / 2) psi
};

/// Throws DomainError if any shell is not normalized to 1e-6.
KineticDensities kinetic_energy_densities(const OrbitalSet& orbs);

/// T_S = sum occ int [u'^2 + l(l+1) u^2 / r^2] / 2 dr.
double kinetic_energy(const OrbitalSet& orbs);

struct SProfile {
  std::vector<double> scaled_r;  // Z^{1/3} r
  std::vector<double> s;
  double s_origin = 0.0;         // s at the innermost grid point
};

SProfile s_profile(const RadialDensity& d, double Z);

struct TableRow {
  int Z = 0;
  std::vector<std::pair<FunctionalId, double>> energies;  // every functional id
  double kinetic_ks = 0.0;
  double kinetic_tf = 0.0;
  double kinetic_vw9 = 0.0;
  double kinetic_gea4 = 0.0;
  double total_energy = 0.0;

  double energy(FunctionalId id) const;
};

TableRow table_row(const AtomResult& atom);
/// Solves the atom with default settings first.
TableRow table_row(int Z);

/// Orbital CSV: '#' header lines naming each shell with its occupation and
/// eigenvalue, a column line "r,u_1s,...", then one row per grid point.
void save_orbitals(const OrbitalSet& orbs, const std::filesystem::path& path);

}  // namespace zetalab
