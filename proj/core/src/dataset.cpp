#include "shrinkage/dataset.hpp"

#include <cmath>
#include <stdexcept>

namespace shrinkage {

Standardizer standardizer_fit(const MatrixXd& x, const VectorXd& y) {
  const auto n = x.rows();
  if (n < 2) throw std::invalid_argument("standardizer_fit: need n >= 2");
  if (y.size() != n)
    throw std::invalid_argument("standardizer_fit: y length mismatch");
  Standardizer s;
  s.x_center = x.colwise().mean();
  s.x_scale.resize(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    double ss = (x.col(j).array() - s.x_center[j]).square().sum();
    double sd = std::sqrt(ss / double(n - 1));
    s.x_scale[j] = (sd > 0.0) ? sd : 1.0;
  }
  s.y_center = y.mean();
  return s;
}

MatrixXd standardize_x(const Standardizer& s, const MatrixXd& x) {
  if (x.cols() != s.x_center.size())
    throw std::invalid_argument("standardize_x: column count mismatch");
  MatrixXd out = x;
  out.rowwise() -= s.x_center.transpose();
  out.array().rowwise() /= s.x_scale.transpose().array();
  return out;
}

VectorXd center_y(const Standardizer& s, const VectorXd& y) {
  return y.array() - s.y_center;
}

VectorXd predict_raw(const Standardizer& s, const MatrixXd& x_raw,
                     const VectorXd& beta_std) {
  MatrixXd xs = standardize_x(s, x_raw);
  return (xs * beta_std).array() + s.y_center;
}

VectorXd coefficients_raw(const Standardizer& s, const VectorXd& beta_std) {
  return beta_std.array() / s.x_scale.array();
}

}  // namespace shrinkage
