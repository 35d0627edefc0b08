#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "zetalab/density.hpp"
#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& text, std::size_t line) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw FormatError("cannot parse number '" + text + "'", line);
  }
  return value;
}

}  // namespace

void save_density(const RadialDensity& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const auto& g = d.grid();
  out << "# zetalab radial density\n";
  out << "# kind = " << to_string(g.kind()) << '\n';
  out << "# r_min = " << format_double(g.r_min()) << '\n';
  out << "# r_max = " << format_double(g.r_max()) << '\n';
  out << "# n_points = " << g.size() << '\n';
  out << "# n_electrons = " << format_double(d.n_electrons()) << '\n';
  out << "r,n\n";
  const auto n = d.n();
  for (std::size_t i = 0; i < n.size(); ++i) {
    out << format_double(g.r(i)) << ',' << format_double(n[i]) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

RadialDensity load_density(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string(), 0);

  std::map<std::string, std::pair<std::string, std::size_t>> header;
  std::vector<double> radii;
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::size_t> row_lines;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const auto eq = text.find('=');
      if (eq == std::string::npos) continue;
      header[trim(std::string_view(text).substr(1, eq - 1))] = {
          trim(std::string_view(text).substr(eq + 1)), line_no};
      continue;
    }
    if (text == "r,n") continue;
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
      throw FormatError("expected two comma-separated columns r,n", line_no);
    }
    const double r = parse_double(trim(std::string_view(text).substr(0, comma)), line_no);
    const double n = parse_double(trim(std::string_view(text).substr(comma + 1)), line_no);
    if (!std::isfinite(r) || !std::isfinite(n)) throw FormatError("non-finite value", line_no);
    if (n < 0.0) throw FormatError("negative density", line_no);
    if (!radii.empty() && !(r > radii.back())) throw FormatError("radii are not increasing", line_no);
    row_lines.push_back(line_no);
    radii.push_back(r);
    values.push_back(n);
  }

  for (const char* key : {"kind", "r_min", "r_max", "n_points", "n_electrons"}) {
    if (!header.count(key)) throw FormatError(std::string("missing header field '") + key + "'", line_no);
  }
  auto field = [&](const char* key) { return header.at(key); };

  GridKind kind;
  try {
    kind = grid_kind_from_string(field("kind").first);
  } catch (const ParameterError& e) {
    throw FormatError(e.what(), field("kind").second);
  }
  const double r_min = parse_double(field("r_min").first, field("r_min").second);
  const double r_max = parse_double(field("r_max").first, field("r_max").second);
  const double points = parse_double(field("n_points").first, field("n_points").second);
  const double stored_count = parse_double(field("n_electrons").first, field("n_electrons").second);
  if (points < 2 || points != std::floor(points)) {
    throw FormatError("n_points must be an integer >= 2", field("n_points").second);
  }
  const auto n_points = static_cast<std::size_t>(points);
  if (radii.size() != n_points) {
    throw FormatError("expected " + std::to_string(n_points) + " rows, found " +
                          std::to_string(radii.size()),
                      line_no);
  }

  std::optional<RadialGrid> grid;
  try {
    grid.emplace(kind, r_min, r_max, n_points);
  } catch (const ParameterError& e) {
    throw FormatError(e.what(), field("r_min").second);
  }
  for (std::size_t i = 0; i < n_points; ++i) {
    const double expected = grid->r(i);
    if (std::abs(radii[i] - expected) > 1e-12 * expected) {
      throw FormatError("radius does not match declared grid", row_lines[i]);
    }
  }

  RadialDensity d = RadialDensity::from_samples(*grid, std::move(values));
  const double tol = 1e-8 * std::max(1.0, std::abs(stored_count));
  if (std::abs(d.n_electrons() - stored_count) > tol) {
    throw FormatError("n_electrons header disagrees with integrated density",
                      field("n_electrons").second);
  }
  return d;
}

}  // namespace zetalab
