#pragma once

#include <Eigen/Dense>

#include "doco/algo.hpp"
#include "doco/objective.hpp"
#include "doco/theory.hpp"

namespace doco {

struct ErrorVector {
  double tracking;     // ||xbar_t - x*_t||
  double consensus_x;  // ||x_t - 1 (x) xbar_t||
  double consensus_y;  // ||y_t - 1 (x) ybar_t||
};

ErrorVector error_vector(const SwarmState& state, const Eigen::VectorXd& x_star);

// Batch recomputation of the cumulative dynamic regret from the stored
// per-agent losses; the run loop accumulates the same series incrementally.
Eigen::VectorXd dynamic_regret_series(const TrajectoryRecord& record);

// Static regret against the hindsight minimizer of the summed quadratics.
double static_regret(const TrajectoryRecord& record, const QuadraticSensing& obj);

// Cumulative sum_{t<=T} ||x*_{t+1} - A x*_t|| for T = 0..steps-1.
Eigen::VectorXd path_length_series(const Eigen::MatrixXd& truth,
                                   const Eigen::MatrixXd& a, int steps);

// Cumulative sum_{t<=T} ||g_{t+1}(1 (x) A x*_t) - g_t(1 (x) x*_t)||.
Eigen::VectorXd gradient_variation_series(const QuadraticSensing& obj,
                                          const Eigen::MatrixXd& truth,
                                          const Eigen::MatrixXd& a, int steps);

struct InequalityCheck {
  bool applicable = false;
  long violations = 0;
  // max over steps of (lhs - rhs) / (1 + rhs); a violation means the margin
  // exceeds the slack tolerance. -1 is the floor of the margin.
  double worst_margin = -1.0;
};

struct InequalityReport {
  InequalityCheck tracking;     // contraction of ||xbar - x*||
  InequalityCheck consensus_x;  // network error in x
  InequalityCheck consensus_y;  // network error in y
  InequalityCheck z_recursion;  // z_{t+1} <= Phi(alpha) z_t + d_t
  long total_violations() const {
    return tracking.violations + consensus_x.violations +
           consensus_y.violations + z_recursion.violations;
  }
};

// Per-step verification of the contraction inequalities along a recorded
// trajectory. Checks that need a stepsize condition are marked not
// applicable when the condition fails; violations are counted, not thrown.
InequalityReport verify_step_inequalities(const TrajectoryRecord& record,
                                          const TheoryParams& params);

constexpr double kInequalitySlack = 1e-8;

}  // namespace doco
