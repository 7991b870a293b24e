#include "doco/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "doco/linalg.hpp"

namespace doco {

Eigen::Matrix2d discretize_oscillator(double omega, double dt) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("discretize_oscillator: omega must be positive");
  }
  if (dt < 0.0) {
    throw std::invalid_argument("discretize_oscillator: dt must be nonnegative");
  }
  const double c = std::cos(omega * dt);
  const double s = std::sin(omega * dt);
  Eigen::Matrix2d a;
  a << c, s / omega, -omega * s, c;
  return a;
}

Eigen::MatrixXd block_diag_dynamics(const std::vector<Eigen::MatrixXd>& blocks) {
  if (blocks.empty()) {
    throw std::invalid_argument("block_diag_dynamics: need at least one block");
  }
  Eigen::Index dim = 0;
  for (const auto& b : blocks) {
    if (b.rows() != b.cols() || b.rows() == 0) {
      throw std::invalid_argument("block_diag_dynamics: blocks must be square");
    }
    dim += b.rows();
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    a.block(at, at, b.rows(), b.rows()) = b;
    at += b.rows();
  }
  return a;
}

DynamicsModel::DynamicsModel(Eigen::MatrixXd a, double noise_scale,
                             std::uint64_t seed)
    : a_(std::move(a)),
      norm_(spectral_norm(a_)),
      noise_scale_(noise_scale),
      c_w_(noise_scale > 0.0
               ? 3.0 * noise_scale * std::sqrt(static_cast<double>(a_.rows()))
               : 0.0),
      rng_(seed) {
  if (a_.rows() != a_.cols() || a_.rows() == 0) {
    throw std::invalid_argument("DynamicsModel: A must be square");
  }
  if (noise_scale < 0.0) {
    throw std::invalid_argument("DynamicsModel: noise scale must be nonnegative");
  }
}

Eigen::VectorXd DynamicsModel::propagate(const Eigen::VectorXd& x_star) {
  if (x_star.size() != a_.rows()) {
    throw std::invalid_argument("DynamicsModel::propagate: dimension mismatch");
  }
  if (noise_scale_ == 0.0) return a_ * x_star;
  Eigen::VectorXd w = noise_scale_ * rng_.gaussian_vector(a_.rows());
  while (w.norm() > c_w_) w = noise_scale_ * rng_.gaussian_vector(a_.rows());
  return a_ * x_star + w;
}

}  // namespace doco
