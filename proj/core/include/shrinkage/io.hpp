#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "json.hpp"

namespace shrinkage {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Numeric CSV, written with 17 significant digits so doubles round-trip
// exactly. Readers accept an optional single header line (detected by a
// non-numeric first field) and skip blank lines.

void write_matrix_csv(const std::string& path, const MatrixXd& m,
                      const std::vector<std::string>& header = {});
void write_vector_csv(const std::string& path, const VectorXd& v,
                      const std::string& name = "");

MatrixXd read_matrix_csv(const std::string& path);
VectorXd read_vector_csv(const std::string& path);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

std::string format_double(double v);  // shortest exact decimal form used above

}  // namespace shrinkage
