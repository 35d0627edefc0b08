#include "zetalab/radial_grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

constexpr std::size_t kStencil = 9;
constexpr std::size_t kInterp = 6;

// Fornberg's recursion: weights c[k][j] for the k-th derivative at z from
// samples at nodes x[0..m-1], k <= max_order.
std::vector<std::array<double, 3>> fornberg_weights(double z, std::span<const double> x,
                                                    int max_order) {
  const std::size_t m = x.size();
  std::vector<std::array<double, 3>> c(m, {0.0, 0.0, 0.0});
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < m; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  return c;
}

// Contribution of [0, r0] assuming f ~ c r^p through the two innermost samples.
double origin_piece(double r0, double r1, double f0, double f1) {
  if (f0 == 0.0 || f1 == 0.0 || (f0 > 0.0) != (f1 > 0.0) || r0 <= 0.0) return 0.0;
  const double p = std::log(f1 / f0) / std::log(r1 / r0);
  if (!std::isfinite(p) || p <= -1.0 || p > 40.0) return 0.0;
  return f0 * r0 / (p + 1.0);
}

}  // namespace

std::string_view to_string(GridKind kind) {
  return kind == GridKind::exponential ? "exponential" : "linear";
}

GridKind grid_kind_from_string(std::string_view name) {
  if (name == "exponential") return GridKind::exponential;
  if (name == "linear") return GridKind::linear;
  throw ParameterError("unknown grid kind '" + std::string(name) + "'");
}

RadialGrid::RadialGrid(GridKind kind, double r_min, double r_max, std::size_t n_points)
    : kind_(kind), r_min_(r_min), r_max_(r_max), h_(0.0) {
  if (!(r_min > 0.0) || !std::isfinite(r_min)) throw ParameterError("r_min must be positive");
  if (!(r_max > r_min) || !std::isfinite(r_max)) throw ParameterError("r_max must exceed r_min");
  if (n_points < 2) throw ParameterError("a radial grid needs at least 2 points");

  const std::size_t n = n_points;
  r_.resize(n);
  if (kind_ == GridKind::exponential) {
    const double ratio = r_max / r_min;
    h_ = std::log(ratio) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      r_[i] = r_min * std::pow(ratio, static_cast<double>(i) / static_cast<double>(n - 1));
    }
  } else {
    h_ = (r_max - r_min) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) r_[i] = r_min + h_ * static_cast<double>(i);
  }
  r_.front() = r_min;
  r_.back() = r_max;

  // Trapezoid with 4th-order end corrections (alternative extended Simpson).
  std::vector<double> c(n, 1.0);
  if (n >= 8) {
    constexpr std::array<double, 4> ends{17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0};
    for (std::size_t k = 0; k < 4; ++k) {
      c[k] = ends[k];
      c[n - 1 - k] = ends[k];
    }
  } else {
    c.front() = 0.5;
    c.back() = 0.5;
  }
  w_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double jacobian = kind_ == GridKind::exponential ? r_[i] : 1.0;
    w_[i] = c[i] * h_ * jacobian;
  }
}

double RadialGrid::coordinate(double radius) const {
  return kind_ == GridKind::exponential ? std::log(radius / r_min_) / h_ : (radius - r_min_) / h_;
}

double RadialGrid::integrate(std::span<const double> f) const {
  if (f.size() != size()) throw ShapeError("integrand length does not match grid");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += w_[i] * f[i];
  return sum + origin_piece(r_[0], r_[1], f[0], f[1]);
}

namespace {

// Integral over [r_i, r_{i+1}] of each grid interval; g is the integrand
// already multiplied by the jacobian.
std::vector<double> interval_pieces(const std::vector<double>& g, double h) {
  const std::size_t n = g.size();
  std::vector<double> piece(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (n < 4) {
      piece[i] = 0.5 * h * (g[i] + g[i + 1]);
    } else if (i == 0) {
      piece[i] = h / 24.0 * (9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3]);
    } else if (i + 2 == n) {
      piece[i] = h / 24.0 * (g[n - 4] - 5.0 * g[n - 3] + 19.0 * g[n - 2] + 9.0 * g[n - 1]);
    } else {
      piece[i] = h / 24.0 * (-g[i - 1] + 13.0 * g[i] + 13.0 * g[i + 1] - g[i + 2]);
    }
  }
  return piece;
}

}  // namespace

std::vector<double> RadialGrid::cumulative(std::span<const double> f) const {
  if (f.size() != size()) throw ShapeError("integrand length does not match grid");
  const std::size_t n = size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = f[i] * (kind_ == GridKind::exponential ? r_[i] : 1.0);
  }
  const auto piece = interval_pieces(g, h_);
  std::vector<double> out(n);
  out[0] = origin_piece(r_[0], r_[1], f[0], f[1]);
  for (std::size_t i = 0; i + 1 < n; ++i) out[i + 1] = out[i] + piece[i];
  return out;
}

double RadialGrid::integrate_range(std::span<const double> f, double a, double b) const {
  if (f.size() != size()) throw ShapeError("integrand length does not match grid");
  if (b < a) return -integrate_range(f, b, a);
  if (a <= r_min_) {
    const auto running = cumulative(f);
    auto at = [&](double radius) {
      if (radius <= 0.0) return 0.0;
      if (radius <= r_min_) return running[0] * radius / r_min_;
      if (radius >= r_max_) return running.back();
      return interpolate(running, radius);
    };
    return at(b) - at(a);
  }
  // Running integral anchored at a, so a small piece of a large integrand
  // is not the difference of two large numbers.
  const std::size_t n = size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = f[i] * (kind_ == GridKind::exponential ? r_[i] : 1.0);
  }
  const auto piece = interval_pieces(g, h_);
  const std::size_t k = std::min(locate(a), n - 1);
  std::vector<double> running(n);
  running[k] = 0.0;
  for (std::size_t i = k; i + 1 < n; ++i) running[i + 1] = running[i] + piece[i];
  for (std::size_t i = k; i > 0; --i) running[i - 1] = running[i] - piece[i - 1];
  auto at = [&](double radius) {
    if (radius >= r_max_) return running.back();
    return interpolate(running, radius);
  };
  return at(std::min(b, r_max_)) - at(std::min(a, r_max_));
}

std::vector<double> RadialGrid::differentiate(std::span<const double> f, int order) const {
  if (order != 1 && order != 2) throw ParameterError("derivative order must be 1 or 2");
  if (f.size() != size()) throw ShapeError("sample length does not match grid");
  const std::size_t n = size();
  const std::size_t m = std::min(kStencil, n);
  if (m < static_cast<std::size_t>(order) + 1) {
    throw ParameterError("grid too small for requested derivative order");
  }

  // Weights depend only on the stencil offset pattern; cache by start offset.
  std::vector<std::vector<std::array<double, 3>>> cache(m);
  std::vector<bool> cached(m, false);
  std::vector<double> nodes(m);

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t start = i >= m / 2 ? i - m / 2 : 0;
    start = std::min(start, n - m);
    const std::size_t rel = i - start;
    if (!cached[rel]) {
      for (std::size_t j = 0; j < m; ++j) nodes[j] = static_cast<double>(j);
      cache[rel] = fornberg_weights(static_cast<double>(rel), nodes, 2);
      cached[rel] = true;
    }
    const auto& c = cache[rel];
    double d1 = 0.0;
    double d2 = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      d1 += c[j][1] * f[start + j];
      d2 += c[j][2] * f[start + j];
    }
    d1 /= h_;
    d2 /= h_ * h_;
    if (kind_ == GridKind::exponential) {
      const double r = r_[i];
      out[i] = order == 1 ? d1 / r : (d2 - d1) / (r * r);
    } else {
      out[i] = order == 1 ? d1 : d2;
    }
  }
  return out;
}

double RadialGrid::interpolate(std::span<const double> f, double radius) const {
  if (f.size() != size()) throw ShapeError("sample length does not match grid");
  if (radius <= r_min_) return f.front();
  if (radius >= r_max_) return f.back();
  const std::size_t n = size();
  const std::size_t m = std::min(kInterp, n);
  const double u = coordinate(radius);
  const auto base = static_cast<long>(std::floor(u)) - static_cast<long>(m / 2 - 1);
  const std::size_t start =
      static_cast<std::size_t>(std::clamp<long>(base, 0, static_cast<long>(n - m)));
  double value = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double l = 1.0;
    const double xj = static_cast<double>(start + j);
    for (std::size_t k = 0; k < m; ++k) {
      if (k != j) l *= (u - static_cast<double>(start + k)) / (xj - static_cast<double>(start + k));
    }
    value += l * f[start + j];
  }
  return value;
}

RadialGrid RadialGrid::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw ParameterError("scale factor must be positive");
  RadialGrid g(kind_, r_min_ * factor, r_max_ * factor, size());
  if (kind_ == GridKind::exponential) {
    for (std::size_t i = 0; i < size(); ++i) {
      g.r_[i] = r_[i] * factor;
      g.w_[i] = w_[i] * factor;
    }
  }
  return g;
}

std::size_t RadialGrid::locate(double radius) const {
  auto it = std::upper_bound(r_.begin(), r_.end(), radius);
  if (it == r_.begin()) return 0;
  return static_cast<std::size_t>(std::distance(r_.begin(), it)) - 1;
}

bool RadialGrid::same_layout(const RadialGrid& other) const {
  return kind_ == other.kind_ && size() == other.size() && r_min_ == other.r_min_ &&
         r_max_ == other.r_max_;
}

RadialGrid make_grid(GridKind kind, double r_min, double r_max, std::size_t n_points) {
  return RadialGrid(kind, r_min, r_max, n_points);
}

RadialGrid default_grid(double Z) {
  if (!(Z > 0.0)) throw ParameterError("nuclear charge must be positive");
  return RadialGrid(GridKind::exponential, 1e-6 / Z, 50.0, 1200);
}

}  // namespace zetalab
