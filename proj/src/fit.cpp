#include "zetalab/fit.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "zetalab/errors.hpp"

namespace zetalab {

double AsymptoticFit::coefficient(const std::string& name) const {
  for (const auto& [key, value] : coefficients) {
    if (key == name) return value;
  }
  throw std::out_of_range("fit '" + model + "' has no coefficient '" + name + "'");
}

AsymptoticFit least_squares(std::string model, const std::vector<std::vector<double>>& rows,
                            std::span<const double> y, const std::vector<std::string>& names,
                            double max_condition) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto k = static_cast<Eigen::Index>(names.size());
  if (static_cast<std::size_t>(m) != y.size()) throw FitError(model + ": data length mismatch");
  if (m < k) {
    throw FitError(model + ": " + std::to_string(m) + " points cannot determine " +
                   std::to_string(k) + " coefficients");
  }
  Eigen::MatrixXd x(m, k);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != k) throw FitError(model + ": ragged design");
    for (Eigen::Index j = 0; j < k; ++j) x(i, j) = rows[i][j];
    rhs(i) = y[i];
  }
  if (!x.allFinite() || !rhs.allFinite()) throw FitError(model + ": non-finite input");

  // Column equilibration so the condition number reflects the model, not units.
  Eigen::VectorXd scale = x.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (scale(j) == 0.0) throw FitError(model + ": column '" + names[j] + "' is identically zero");
  }
  const Eigen::MatrixXd xs = x * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(xs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                               : std::numeric_limits<double>::infinity();
  if (!(cond <= max_condition)) {
    throw FitError(model + ": ill-conditioned fit (condition number " + std::to_string(cond) + ")");
  }
  const Eigen::VectorXd cs = svd.solve(rhs);
  const Eigen::VectorXd c = cs.cwiseQuotient(scale);
  const Eigen::VectorXd res = rhs - x * c;

  AsymptoticFit fit;
  fit.model = std::move(model);
  for (Eigen::Index j = 0; j < k; ++j) fit.coefficients.emplace_back(names[j], c(j));
  fit.values.assign(y.begin(), y.end());
  fit.residuals.assign(res.data(), res.data() + res.size());
  fit.residual_norm = res.norm();
  fit.condition_number = cond;
  return fit;
}

nlohmann::json to_json(const AsymptoticFit& fit) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [name, value] : fit.coefficients) coeffs[name] = value;
  return {{"model", fit.model},
          {"coefficients", coeffs},
          {"abscissa", fit.abscissa},
          {"values", fit.values},
          {"residuals", fit.residuals},
          {"residual_norm", fit.residual_norm},
          {"condition_number", fit.condition_number},
          {"notices", fit.notices}};
}

}  // namespace zetalab
