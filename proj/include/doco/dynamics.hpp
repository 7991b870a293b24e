#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "doco/rng.hpp"

namespace doco {

// Exact flow of xdot = [[0, 1], [-omega^2, 0]] x over dt seconds.
Eigen::Matrix2d discretize_oscillator(double omega, double dt);

Eigen::MatrixXd block_diag_dynamics(const std::vector<Eigen::MatrixXd>& blocks);

// Linear optimizer dynamics x*_{t+1} = A x*_t + w_t with the noise hard
// bounded, ||w_t|| <= noise_bound(). The noise stream belongs to a single
// simulation; the model is not meant to be shared across concurrent runs.
class DynamicsModel {
 public:
  DynamicsModel(Eigen::MatrixXd a, double noise_scale, std::uint64_t seed);

  const Eigen::MatrixXd& matrix() const { return a_; }
  double norm() const { return norm_; }  // ||A||_2, computed once
  double noise_scale() const { return noise_scale_; }
  double noise_bound() const { return c_w_; }

  // A x + w with w drawn from scale * N(0, I) resampled until it respects
  // the bound; exactly A x when the scale is zero.
  Eigen::VectorXd propagate(const Eigen::VectorXd& x_star);

 private:
  Eigen::MatrixXd a_;
  double norm_;
  double noise_scale_;
  double c_w_;
  Rng rng_;
};

}  // namespace doco
