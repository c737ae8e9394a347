#pragma once

#include <Eigen/Dense>
#include <vector>

namespace shrinkage {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Column centering/scaling fitted on training data and replayed on new data.
// Constant columns get scale 1 so they map to all-zero columns.
struct Standardizer {
  VectorXd x_center;
  VectorXd x_scale;
  double y_center = 0.0;
};

struct Dataset {
  MatrixXd x;  // n rows, p columns, raw scale
  VectorXd y;
  // simulation truth on the raw scale; beta_true has size 0 for real data
  VectorXd beta_true;
  double sigma2_true = 0.0;
  std::vector<int> active;
};

Standardizer standardizer_fit(const MatrixXd& x, const VectorXd& y);

MatrixXd standardize_x(const Standardizer& s, const MatrixXd& x);
VectorXd center_y(const Standardizer& s, const VectorXd& y);

// mean prediction on the raw y scale from coefficients fitted on the
// standardized design
VectorXd predict_raw(const Standardizer& s, const MatrixXd& x_raw,
                     const VectorXd& beta_std);

// coefficients mapped back to the raw x scale (no intercept term)
VectorXd coefficients_raw(const Standardizer& s, const VectorXd& beta_std);

}  // namespace shrinkage
