// zetalab command-line driver: atoms, TF scaling, functional evaluation,
// asymptotic fits and the CSV/JSON artifacts behind the reproduction tables.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zetalab/asymptotics.hpp"
#include "zetalab/atom_scf.hpp"
#include "zetalab/density.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/functionals.hpp"
#include "zetalab/tf_atom.hpp"
#include "zetalab/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace zetalab;

namespace {

enum Exit { kOk = 0, kUsage = 2, kSolver = 3, kFit = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out = ".";
};

fs::path prepare_out(const Common& c) {
  fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw UsageError("cannot create output directory " + c.out);
  return dir;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  out << j.dump(2) << '\n';
  if (!out) throw UsageError("failed writing " + path.string());
}

json envelope(const std::string& command, json config) {
  return {{"program", "zetalab"}, {"version", std::string(version())}, {"command", command},
          {"config", std::move(config)}};
}

class Csv {
 public:
  explicit Csv(const fs::path& path) : path_(path), out_(path) {
    if (!out_) throw UsageError("cannot write " + path.string());
    out_.precision(12);
  }
  void comment(const std::string& text) { out_ << "# " << text << '\n'; }
  void header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) out_ << (i ? "," : "") << cols[i];
    out_ << '\n';
  }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
    out_ << '\n';
  }
  ~Csv() { out_.flush(); }

 private:
  fs::path path_;
  std::ofstream out_;
};

std::vector<FunctionalId> parse_functionals(const std::vector<std::string>& names) {
  std::vector<FunctionalId> ids;
  for (const auto& n : names) ids.push_back(functional_from_string(n));
  return ids;
}

std::string zeta_tag(double z) {
  std::ostringstream s;
  s << z;
  return s.str();
}

// ---------------------------------------------------------------- atom

struct AtomArgs {
  int Z = 0;
  ScfConfig cfg;
};

json scf_config_json(const ScfConfig& c) {
  return {{"max_iterations", c.max_iterations}, {"mixing", c.mixing},
          {"energy_tolerance", c.energy_tolerance}, {"grid_r_min", c.grid_r_min},
          {"grid_r_max", c.grid_r_max}, {"grid_points", c.grid_points}};
}

void add_scf_flags(CLI::App* cmd, ScfConfig& cfg) {
  cmd->add_option("--tol", cfg.energy_tolerance, "SCF energy tolerance (hartree)");
  cmd->add_option("--mix", cfg.mixing, "linear density mixing fraction");
  cmd->add_option("--max-iter", cfg.max_iterations, "maximum SCF iterations");
  cmd->add_option("--points", cfg.grid_points, "radial grid points");
  cmd->add_option("--r-max", cfg.grid_r_max, "outer grid radius (bohr)");
}

int cmd_atom(const Common& common, const AtomArgs& a) {
  if (!is_supported_atom(a.Z)) {
    throw UsageError("Z = " + std::to_string(a.Z) +
                     " is not a supported closed-shell atom (2, 10, 18, 36, 54, 86)");
  }
  const fs::path dir = prepare_out(common);
  const AtomResult atom = solve_atom(a.Z, a.cfg);
  save_density(atom.density, dir / "density.csv");
  save_orbitals(atom.orbitals, dir / "orbitals.csv");
  const TableRow row = table_row(atom);

  json j = envelope("atom", {{"Z", a.Z}, {"scf", scf_config_json(a.cfg)}});
  json funcs = json::object();
  for (const auto& [id, e] : row.energies) funcs[std::string(to_string(id))] = e;
  json eig = json::object();
  for (const auto& s : atom.orbitals.shells) eig[s.label()] = s.eigenvalue;
  j["Z"] = a.Z;
  j["iterations"] = atom.iterations;
  j["total_energy"] = atom.total_energy;
  j["kinetic_ks"] = row.kinetic_ks;
  j["electrons"] = atom.density.n_electrons();
  j["functionals"] = funcs;
  j["eigenvalues"] = eig;
  j["s_origin"] = s_profile(atom.density, a.Z).s_origin;
  write_json(dir / "energies.json", j);
  std::printf("Z = %d converged in %d iterations: E = %.8f, E_x^LDA = %.6f\n", a.Z,
              atom.iterations, atom.total_energy, row.energy(FunctionalId::lda_x));
  return kOk;
}

// ---------------------------------------------------------------- tf

struct TfArgs {
  double Z = 1.0;
  std::string fit_corr;
  double zmin = 1.0;
  double zmax = 1e4;
  std::size_t npts = 17;
  std::size_t terms = kMaxCorrectionTerms;
};

int cmd_tf(const Common& common, const TfArgs& a) {
  if (!(a.Z > 0.0)) throw UsageError("--Z must be positive");
  std::optional<FunctionalId> corr;
  if (!a.fit_corr.empty()) {
    corr = functional_from_string(a.fit_corr);
    if (*corr != FunctionalId::lda_c && *corr != FunctionalId::pbe_c) {
      throw UsageError("--fit-corr accepts lda_c or pbe_c");
    }
    if (!(a.zmin > 0.0) || !(a.zmax > a.zmin)) throw UsageError("need 0 < --zmin < --zmax");
  }
  const fs::path dir = prepare_out(common);
  const TFSolution sol = solve_universal_tf();
  save_density(tf_density(sol, a.Z), dir / "tf_density.csv");

  const TFEnergy en = tf_energy_components(sol, a.Z);
  const double e_tf = tf_total_energy(sol, a.Z);
  const double ex = lda_x_on_tf(sol, a.Z);
  json cfg = {{"Z", a.Z}};
  if (corr) {
    cfg["fit_corr"] = a.fit_corr;
    cfg["zmin"] = a.zmin;
    cfg["zmax"] = a.zmax;
    cfg["npts"] = a.npts;
    cfg["terms"] = a.terms;
  }
  json j = envelope("tf", cfg);
  j["phi_prime_0"] = sol.slope_origin();
  j["E_TF"] = e_tf;
  j["E_TF_over_Z73"] = e_tf / std::pow(a.Z, 7.0 / 3.0);
  j["Ex_LDA"] = ex;
  j["Ex_LDA_over_Z53"] = ex / std::pow(a.Z, 5.0 / 3.0);
  j["components"] = {{"kinetic", en.kinetic}, {"nuclear", en.nuclear},
                     {"hartree", en.hartree}, {"slope_formula", en.slope_formula}};
  std::printf("E_TF/Z^(7/3) = %.8f  E_x^LDA/Z^(5/3) = %.8f\n", e_tf / std::pow(a.Z, 7.0 / 3.0),
              ex / std::pow(a.Z, 5.0 / 3.0));
  if (corr) {
    const auto zs = log_spaced(a.zmin, a.zmax, a.npts);
    const AsymptoticFit fit = correlation_asymptotics(sol, *corr, zs, a.terms);
    const CorrelationLimit lim = correlation_high_density_limit(sol, *corr);
    j["correlation_fit"] = to_json(fit);
    j["correlation_limit"] = {{"A_C", lim.a_c}, {"B_C", lim.b_c}};
    std::printf("%s: A_C = %.6f  B_C = %.6f  (limit %.6f, %.6f)\n", a.fit_corr.c_str(),
                fit.coefficient("A_C"), fit.coefficient("B_C"), lim.a_c, lim.b_c);
  }
  write_json(dir / "tf_report.json", j);
  return kOk;
}

// ---------------------------------------------------------------- scale

struct ScaleArgs {
  std::string density;
  std::vector<double> zeta;
};

int cmd_scale(const Common& common, const ScaleArgs& a) {
  for (double z : a.zeta) {
    if (!(z > 0.0)) throw UsageError("zeta values must be positive");
  }
  if (!fs::exists(a.density)) throw UsageError("no such density file: " + a.density);
  const RadialDensity d = load_density(a.density);
  const fs::path dir = prepare_out(common);
  json rows = json::array();
  for (double z : a.zeta) {
    const RadialDensity s = zeta_scale(d, z);
    save_density(s, dir / ("density_zeta_" + zeta_tag(z) + ".csv"));
    const ScalingLawReport rep = verify_scaling_laws(d, z);
    rows.push_back({{"zeta", z},
                    {"electrons", s.n_electrons()},
                    {"expected_electrons", z * d.n_electrons()},
                    {"electron_number_rel", rep.electron_number_rel},
                    {"s_law_abs", rep.s_law_abs},
                    {"q_law_abs", rep.q_law_abs},
                    {"t_law_abs", rep.t_law_abs},
                    {"max_abs", rep.max_abs()},
                    {"max_deviation", rep.max_deviation()}});
    std::printf("zeta = %g: N = %.10f, max scaling-law deviation %.3e\n", z, s.n_electrons(),
                rep.max_deviation());
  }
  json j = envelope("scale", {{"density", a.density}, {"zeta", a.zeta}});
  j["results"] = rows;
  write_json(dir / "scale_report.json", j);
  return kOk;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string density;
  std::vector<std::string> functionals;
  double b88_beta = kB88BetaFitted;
};

int cmd_eval(const Common& common, const EvalArgs& a) {
  const auto ids = parse_functionals(a.functionals);
  if (!fs::exists(a.density)) throw UsageError("no such density file: " + a.density);
  const RadialDensity d = load_density(a.density);
  const fs::path dir = prepare_out(common);
  FunctionalOptions opt;
  opt.b88_beta = a.b88_beta;
  json res = json::object();
  json warnings = json::array();
  for (FunctionalId id : ids) {
    const FunctionalResult r = evaluate(id, d, opt);
    res[std::string(to_string(id))] = r.energy;
    for (const auto& w : r.warnings) warnings.push_back(std::string(to_string(id)) + ": " + w);
    std::printf("%s %.10f\n", std::string(to_string(id)).c_str(), r.energy);
  }
  json j = envelope("eval", {{"density", a.density}, {"functionals", a.functionals},
                             {"b88_beta", a.b88_beta}});
  j["electrons"] = d.n_electrons();
  j["energies"] = res;
  j["warnings"] = warnings;
  write_json(dir / "eval.json", j);
  return kOk;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string series;
  std::vector<int> atoms{2, 10, 18, 36, 54, 86};
  int order = 1;
  double b88_beta = kB88BetaFitted;
  ScfConfig cfg;
};

int cmd_fit(const Common& common, const FitArgs& a) {
  const bool c_lda = a.series == "c_lda";
  FunctionalId id = FunctionalId::lda_x;
  if (!c_lda) {
    id = functional_from_string(a.series);
    if (!is_exchange(id) || id == FunctionalId::lda_x) {
      throw UsageError("--series takes gea_x, pbe_x, b88_x or c_lda");
    }
  }
  if (a.order < 0) throw UsageError("--order must be non-negative");
  for (int Z : a.atoms) {
    if (!is_supported_atom(Z)) throw UsageError("unsupported atom Z = " + std::to_string(Z));
  }
  const fs::path dir = prepare_out(common);
  FunctionalOptions opt;
  opt.b88_beta = a.b88_beta;
  std::vector<ExchangePoint> pts;
  for (int Z : a.atoms) {
    const AtomResult atom = solve_atom(Z, a.cfg);
    const double lda = lda_exchange(atom.density).energy;
    const double ex = c_lda ? lda : evaluate(id, atom.density, opt).energy;
    pts.push_back({static_cast<double>(Z), ex, lda});
  }
  const AsymptoticFit fit = c_lda ? fit_c_lda(pts, a.order) : fit_delta_c(pts, a.order);
  json data = json::array();
  for (const auto& p : pts) data.push_back({{"Z", p.Z}, {"E_x", p.e_x}, {"E_x_lda", p.e_x_lda}});
  json j = envelope("fit", {{"series", a.series}, {"atoms", a.atoms}, {"order", a.order},
                            {"b88_beta", a.b88_beta}, {"scf", scf_config_json(a.cfg)}});
  j["data"] = data;
  j["fit"] = to_json(fit);
  write_json(dir / ("fit_" + a.series + ".json"), j);
  const char* name = c_lda ? "C_LDA" : "Delta_C";
  std::printf("%s (%s) = %.6f\n", name, a.series.c_str(), fit.coefficient(name));
  for (const auto& n : fit.notices) std::printf("note: %s\n", n.c_str());
  return kOk;
}

// ---------------------------------------------------------------- regions

struct RegionArgs {
  double a = 1.0;
  double b = 1.0;
  std::vector<double> zeta{1.0};
  double threshold = 1.0;
  bool sweep = false;
  std::size_t points = 1200;
};

RadialDensity exponential_density(double a, double b, std::size_t points) {
  const RadialGrid g(GridKind::exponential, 1e-6 / b, 50.0 / b, points);
  std::vector<double> n(g.size());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = a * std::exp(-b * g.r(i));
  return RadialDensity::from_samples(g, std::move(n));
}

int cmd_regions(const Common& common, const RegionArgs& a) {
  if (!(a.a > 0.0) || !(a.b > 0.0)) throw UsageError("--a and --b must be positive");
  if (!(a.threshold > 0.0)) throw UsageError("--threshold must be positive");
  for (double z : a.zeta) {
    if (!(z > 0.0)) throw UsageError("zeta values must be positive");
  }
  const fs::path dir = prepare_out(common);
  const RadialDensity d = exponential_density(a.a, a.b, a.points);
  json j = envelope("regions", {{"a", a.a}, {"b", a.b}, {"zeta", a.zeta},
                                {"threshold", a.threshold}, {"sweep", a.sweep},
                                {"points", a.points}});
  json reports = json::array();
  static constexpr FunctionalId kIds[] = {FunctionalId::tf, FunctionalId::vw9,
                                          FunctionalId::lda_x, FunctionalId::gea_x};
  static constexpr Region kRegions[] = {Region::cusp, Region::bulk, Region::evanescent};
  for (double z : a.zeta) {
    RegionReport rep = region_radii(d, z, a.threshold);
    for (FunctionalId id : kIds) {
      for (Region r : kRegions) {
        rep.contributions.emplace_back(
            std::string(to_string(id)) + "/" + std::string(to_string(r)),
            region_energy(d, z, id, r, a.threshold));
      }
    }
    reports.push_back(to_json(rep));
    std::printf("zeta = %g: r_e = %.6f (s-only root %.6f), r_c = %.6f\n", z, *rep.r_e, *rep.r_s,
                *rep.r_c);
  }
  j["reports"] = reports;
  if (a.sweep) {
    const auto zs = default_region_zetas();
    const RegionScaling sc = region_scaling_exponents(d, zs, a.threshold);
    json ex = json::object();
    for (FunctionalId id : kIds) {
      for (Region r : kRegions) {
        const AsymptoticFit f = region_contributions(d, zs, id, r, a.threshold);
        ex[std::string(to_string(id)) + "/" + std::string(to_string(r))] = to_json(f);
      }
    }
    j["scaling"] = {{"cusp_fit", to_json(sc.cusp)},
                    {"evanescent_fit", to_json(sc.evanescent)},
                    {"re_ratio", sc.re_ratio},
                    {"re_ratio_variation_top_decade", sc.re_ratio_variation},
                    {"contribution_fits", ex}};
    std::printf("r_c exponent %.4f, r_e zeta^(1/3)/ln zeta varies %.2f%% over the top decade\n",
                sc.cusp.coefficient("p"), 100.0 * sc.re_ratio_variation);
  }
  write_json(dir / "regions.json", j);
  return kOk;
}

// ---------------------------------------------------------------- figures

int cmd_figures(const Common& common, const ScfConfig& cfg) {
  const fs::path dir = prepare_out(common);
  std::map<int, AtomResult> atoms;
  for (int Z : supported_atoms()) atoms.emplace(Z, solve_atom(Z, cfg));

  {  // scaled He radial densities on a common radius axis
    Csv csv(dir / "fig1.csv");
    const std::vector<double> zetas{1.0, 2.0, 4.0};
    csv.comment("4 pi r^2 n_zeta(r) for the KS-LDA He density");
    std::vector<std::string> cols{"r"};
    std::vector<RadialDensity> scaled;
    for (double z : zetas) {
      cols.push_back("zeta_" + zeta_tag(z));
      scaled.push_back(zeta_scale(atoms.at(2).density, z));
    }
    csv.header(cols);
    for (double r = 0.0; r <= 4.0 + 1e-12; r += 0.02) {
      std::vector<double> row{r};
      for (const auto& s : scaled) {
        row.push_back(r == 0.0 ? 0.0 : 4.0 * std::numbers::pi * r * r * s.grid().interpolate(s.n(), r));
      }
      csv.row(row);
    }
  }
  {  // s against Z^{1/3} r for Kr and Rn
    Csv csv(dir / "fig2.csv");
    csv.comment("reduced gradient s vs Z^(1/3) r; one block per atom");
    csv.header({"Z", "scaled_r", "s"});
    for (int Z : {36, 86}) {
      const SProfile p = s_profile(atoms.at(Z).density, Z);
      for (std::size_t i = 0; i < p.s.size(); ++i) {
        if (p.scaled_r[i] > 5.0) break;
        csv.row({static_cast<double>(Z), p.scaled_r[i], p.s[i]});
      }
    }
  }
  {  // Xe exchange energy density differences
    Csv csv(dir / "fig3.csv");
    csv.comment("4 pi r^2 (e_x - e_x^LDA) for Xe");
    csv.header({"r", "gea_x", "pbe_x"});
    const RadialDensity& d = atoms.at(54).density;
    const auto gea = exchange_energy_density_difference(d, FunctionalId::gea_x);
    const auto pbe = exchange_energy_density_difference(d, FunctionalId::pbe_x);
    for (std::size_t i = 0; i < d.grid().size(); ++i) {
      if (d.grid().r(i) > 10.0) break;
      csv.row({d.grid().r(i), gea[i], pbe[i]});
    }
  }
  {  // scaled correlation energies with the high-density asymptotes
    const TFSolution tf = solve_universal_tf();
    const CorrelationLimit lda = correlation_high_density_limit(tf, FunctionalId::lda_c);
    const CorrelationLimit pbe = correlation_high_density_limit(tf, FunctionalId::pbe_c);
    Csv csv(dir / "fig4.csv");
    csv.comment("E_c/(Z ln Z) vs Z^(-1/3); asymptote = A_C + B_C / ln Z");
    csv.header({"Z", "Z_m13", "lda_c", "pbe_c", "lda_asymptote", "pbe_asymptote"});
    for (const auto& [Z, atom] : atoms) {
      const double zl = Z * std::log(static_cast<double>(Z));
      const double lnz = std::log(static_cast<double>(Z));
      csv.row({static_cast<double>(Z), 1.0 / std::cbrt(static_cast<double>(Z)),
               lda_correlation(atom.density).energy / zl, pbe_correlation(atom.density).energy / zl,
               lda.a_c + lda.b_c / lnz, pbe.a_c + pbe.b_c / lnz});
    }
  }
  json j = envelope("figures", {{"scf", scf_config_json(cfg)}});
  j["files"] = {"fig1.csv", "fig2.csv", "fig3.csv", "fig4.csv"};
  write_json(dir / "figures.json", j);
  std::printf("wrote fig1.csv .. fig4.csv to %s\n", dir.string().c_str());
  return kOk;
}

template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const SolverError& e) {
    std::cerr << "solver did not converge: " << e.what() << '\n';
    return kSolver;
  } catch (const FitError& e) {
    std::cerr << "fit failed: " << e.what() << '\n';
    return kFit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zetalab: semiclassical scaling of atomic densities"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("-o,--out", common.out, "output directory")
      ->envname("ZETALAB_OUT")
      ->capture_default_str();

  AtomArgs atom;
  auto* c_atom = app.add_subcommand("atom", "self-consistent KS-LDA noble-gas atom");
  c_atom->add_option("--Z", atom.Z, "atomic number (2, 10, 18, 36, 54, 86)")->required();
  add_scf_flags(c_atom, atom.cfg);

  TfArgs tf;
  auto* c_tf = app.add_subcommand("tf", "Thomas-Fermi atom and correlation asymptotics");
  c_tf->add_option("--Z", tf.Z, "nuclear charge")->capture_default_str();
  c_tf->add_option("--fit-corr", tf.fit_corr, "fit A_C, B_C for lda_c or pbe_c");
  c_tf->add_option("--zmin", tf.zmin, "smallest zeta of the sweep")->capture_default_str();
  c_tf->add_option("--zmax", tf.zmax, "largest zeta of the sweep")->capture_default_str();
  c_tf->add_option("--npts", tf.npts, "sweep points")->capture_default_str();
  c_tf->add_option("--terms", tf.terms, "subleading terms in the fit")->capture_default_str();

  ScaleArgs scale;
  auto* c_scale = app.add_subcommand("scale", "zeta-scale a density file");
  c_scale->add_option("--density", scale.density, "density CSV")->required();
  c_scale->add_option("--zeta", scale.zeta, "scale factors")->required()->delimiter(',');

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "evaluate functionals on a density file");
  c_eval->add_option("--density", ev.density, "density CSV")->required();
  c_eval->add_option("--functional", ev.functionals, "functional ids (" + valid_functional_ids() + ")")
      ->required()
      ->delimiter(',');
  c_eval->add_option("--b88-beta", ev.b88_beta, "B88 beta")->capture_default_str();

  FitArgs fit;
  auto* c_fit = app.add_subcommand("fit", "large-Z exchange coefficient fits");
  c_fit->add_option("--series", fit.series, "gea_x, pbe_x, b88_x or c_lda")->required();
  c_fit->add_option("--atoms", fit.atoms, "atomic numbers")->delimiter(',');
  c_fit->add_option("--order", fit.order, "polynomial order in Z^(-1/3)")->capture_default_str();
  c_fit->add_option("--b88-beta", fit.b88_beta, "B88 beta")->capture_default_str();
  add_scf_flags(c_fit, fit.cfg);

  RegionArgs reg;
  auto* c_reg = app.add_subcommand("regions", "cusp and evanescent regions of a exp(-b r)");
  c_reg->add_option("--a", reg.a, "density prefactor")->capture_default_str();
  c_reg->add_option("--b", reg.b, "decay constant")->capture_default_str();
  c_reg->add_option("--zeta", reg.zeta, "scale factors")->delimiter(',');
  c_reg->add_option("--threshold", reg.threshold, "bound on s and |q/s|")->capture_default_str();
  c_reg->add_option("--points", reg.points, "grid points")->capture_default_str();
  c_reg->add_flag("--sweep", reg.sweep, "fit region scaling exponents over zeta = 1e3..1e9");

  ScfConfig fig_cfg;
  auto* c_fig = app.add_subcommand("figures", "CSV data for the four figures");
  add_scf_flags(c_fig, fig_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*c_atom) return guarded([&] { return cmd_atom(common, atom); });
  if (*c_tf) return guarded([&] { return cmd_tf(common, tf); });
  if (*c_scale) return guarded([&] { return cmd_scale(common, scale); });
  if (*c_eval) return guarded([&] { return cmd_eval(common, ev); });
  if (*c_fit) return guarded([&] { return cmd_fit(common, fit); });
  if (*c_reg) return guarded([&] { return cmd_regions(common, reg); });
  if (*c_fig) return guarded([&] { return cmd_figures(common, fig_cfg); });
  return kUsage;
}
