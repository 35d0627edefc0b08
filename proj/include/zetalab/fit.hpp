#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace zetalab {

/// Result of a linear least-squares fit of expansion coefficients.
struct AsymptoticFit {
  std::string model;
  std::vector<std::pair<std::string, double>> coefficients;
  std::vector<double> abscissa;   // independent variable per point (model specific)
  std::vector<double> values;     // fitted data per point
  std::vector<double> residuals;  // data - model per point
  double residual_norm = 0.0;
  double condition_number = 0.0;
  std::vector<std::string> notices;

  /// Throws std::out_of_range for unknown names.
  double coefficient(const std::string& name) const;
};

/// Solves min |X c - y| for the named columns of X (row-major, one row per
/// point). Throws FitError when there are fewer rows than columns, when any
/// input is non-finite, or when the scaled condition number of X exceeds
/// max_condition.
AsymptoticFit least_squares(std::string model, const std::vector<std::vector<double>>& rows,
                            std::span<const double> y, const std::vector<std::string>& names,
                            double max_condition = 1e12);

nlohmann::json to_json(const AsymptoticFit& fit);

}  // namespace zetalab
