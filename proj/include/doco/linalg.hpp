#pragma once

#include <Eigen/Dense>

namespace doco {

// Spectral norm (largest singular value). Exact SVD up to 64x64, power
// iteration on M^T M beyond that.
double spectral_norm(const Eigen::MatrixXd& m);

// Row and column sums all within tol of one, entries >= -tol.
bool is_doubly_stochastic(const Eigen::MatrixXd& w, double tol = 1e-9);

}  // namespace doco
