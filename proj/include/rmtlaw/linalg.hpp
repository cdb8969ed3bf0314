#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rmtlaw::linalg {

// Eigenvalues of a symmetric matrix in ascending order. Only the lower
// triangle is read. Throws NumericError if the solver does not converge.
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a);

// (1/m) sum_i lambda_i^k for k = 1..k_max.
std::vector<double> power_moments(std::span<const double> eigenvalues, unsigned k_max);

}  // namespace rmtlaw::linalg
