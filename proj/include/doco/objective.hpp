#pragma once

#include <vector>

#include <Eigen/Dense>

namespace doco {

struct ConvexityConstants {
  double l_g;  // smoothness of every local loss
  double mu;   // strong convexity of the global loss
};

// Time-varying quadratic sensing family: agent i at step t owns the rows
// [offsets[i], offsets[i+1]) of the stacked matrix C_t and the matching
// entries of y_t, with local loss f_{i,t}(x) = 0.5 |C_{i,t} x - y_{i,t}|^2.
// A single stacked matrix may be shared by all steps (static sensing).
class QuadraticSensing {
 public:
  QuadraticSensing() = default;  // empty placeholder, assign before use

  // Static sensing: per-agent rows fixed over time.
  QuadraticSensing(const std::vector<Eigen::MatrixXd>& agent_rows,
                   std::vector<Eigen::VectorXd> measurements);

  // Time-varying sensing: one stacked matrix per step.
  QuadraticSensing(std::vector<Eigen::MatrixXd> stacked_per_step,
                   std::vector<Eigen::Index> row_offsets,
                   std::vector<Eigen::VectorXd> measurements);

  int agents() const { return static_cast<int>(offsets_.size()) - 1; }
  int dim() const { return d_; }
  // Number of time indices with data (runs may use any t below this).
  int steps() const { return static_cast<int>(y_.size()); }
  bool time_varying() const { return c_.size() > 1; }

  const Eigen::MatrixXd& stacked_matrix(int t) const {
    return c_.size() == 1 ? c_.front() : c_.at(static_cast<std::size_t>(t));
  }
  const Eigen::VectorXd& measurement(int t) const {
    return y_.at(static_cast<std::size_t>(t));
  }

  // grad f_{i,t}(x) = C_{i,t}^T (C_{i,t} x - y_{i,t})
  Eigen::VectorXd local_gradient(int agent, int t, const Eigen::VectorXd& x) const;
  double local_loss(int agent, int t, const Eigen::VectorXd& x) const;

  // Global loss f_t(x) = 0.5 ||C_t x - y_t||^2 and its gradient.
  double global_loss(int t, const Eigen::VectorXd& x) const;
  Eigen::VectorXd global_gradient(int t, const Eigen::VectorXd& x) const;

  // Stacked gradient g_t: block i is agent i's local gradient at its own
  // block of the stacked decision vector.
  Eigen::VectorXd stacked_gradient(int t, const Eigen::VectorXd& x_stacked) const;
  // g_t evaluated with every agent at the same point.
  Eigen::VectorXd stacked_gradient_common(int t, const Eigen::VectorXd& x) const;

  // argmin_x f_t(x) = (C_t^T C_t)^{-1} C_t^T y_t.
  Eigen::VectorXd exact_optimizer(int t) const;

  ConvexityConstants convexity_constants() const;

 private:
  void validate() const;

  std::vector<Eigen::MatrixXd> c_;      // size 1 (static) or steps()
  std::vector<Eigen::Index> offsets_;   // agents() + 1, offsets_[0] = 0
  std::vector<Eigen::VectorXd> y_;      // one stacked measurement per step
  int d_ = 0;
  Eigen::LLT<Eigen::MatrixXd> static_llt_;  // cached normal equations, static case
};

}  // namespace doco
