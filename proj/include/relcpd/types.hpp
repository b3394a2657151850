#pragma once

#include <Eigen/Dense>

namespace relcpd {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Sample set: one sample per row.
using Samples = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Selects between the OpenMP kernels and their serial reference loops.
/// Both paths produce bit-identical results.
enum class Execution { serial, parallel };

}  // namespace relcpd
