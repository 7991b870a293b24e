#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "doco/objective.hpp"
#include "doco/scenarios.hpp"

namespace doco {

enum class Algorithm { doco, odg };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

// Stacked decisions and gradient trackers at one time index.
struct SwarmState {
  Eigen::VectorXd x;  // n*d
  Eigen::VectorXd y;  // n*d
  int t = 0;
};

// y_{i,0} = alpha * grad f_{i,0}(x_{i,0}).
SwarmState init_state(const QuadraticSensing& obj, const Eigen::VectorXd& x0,
                      double alpha);

// One tracked-gradient update:
//   xhat = (W (x) I)(x - y),   x+ = (I (x) A) xhat,
//   y+   = (W (x) I) y + alpha g_{t+1}(x+) - alpha g_t(x).
// g_now must hold g_t(x) on entry and holds g_{t+1}(x+) on return.
void doco_step(SwarmState& state, const QuadraticSensing& obj,
               const Eigen::MatrixXd& w, const Eigen::MatrixXd& a, double alpha,
               Eigen::VectorXd& g_now);

// Tracker-free baseline: x_{i,t+1} = A (sum_j W_ij x_{j,t} - alpha grad
// f_{i,t}(x_{i,t})).
void odg_step(SwarmState& state, const QuadraticSensing& obj,
              const Eigen::MatrixXd& w, const Eigen::MatrixXd& a, double alpha);

enum class InitMode { zeros, random };

struct RunOptions {
  Algorithm algorithm = Algorithm::doco;
  double alpha = 0.1;
  int steps = 1;  // produces iterates for t = 0..steps
  std::uint64_t seed = 1;
  InitMode init = InitMode::zeros;
};

// Everything a run produces, one entry per recorded time index. A run that
// trips the divergence guard (non-finite iterate or ||x|| > 1e9) stops
// recording there and carries the flag instead of throwing.
struct TrajectoryRecord {
  Algorithm algorithm = Algorithm::doco;
  int n = 0;
  int d = 0;
  double alpha = 0.0;
  double sigma_w = 0.0;
  double a_norm = 1.0;
  std::uint64_t seed = 0;
  bool diverged = false;
  int diverged_at = -1;

  std::vector<Eigen::VectorXd> x;          // stacked iterates
  std::vector<Eigen::VectorXd> y;          // stacked trackers (zero for odg)
  Eigen::MatrixXd x_star;                  // d x (steps + 1): optimizers seen
  Eigen::MatrixXd agent_loss;              // n x steps: f_t(x_{i,t})
  std::vector<double> opt_loss;            // f_t(x*_t)
  std::vector<Eigen::Vector3d> z;          // [tracking, consensus_x, consensus_y]
  std::vector<Eigen::Vector3d> d_vec;      // [d1, 0, d3]
  std::vector<double> grad_variation;      // per-step ||g_{t+1} - g_t|| at optimizers
  std::vector<double> r_dynamic;           // cumulative dynamic regret
  std::vector<double> p_path;              // cumulative prediction residual
  std::vector<double> v_grad;              // cumulative gradient variation
  std::vector<double> conservation;        // || sum_i y_i - alpha sum_i grad_i ||
  std::vector<double> conservation_scale;  // 1 + alpha ||g_t||
  std::vector<double> grad_norm_max;       // max_i ||grad f_{i,t}(x_{i,t})||

  int steps() const { return static_cast<int>(x.size()); }

  // Empirical constants fed to the bound formulas.
  double empirical_g() const;
  double empirical_c_w() const;
  double empirical_c_g() const;  // max_t (d3 / alpha)
};

// Simulate `steps` updates on a scenario built for at least that horizon.
TrajectoryRecord run(const Scenario& scenario, const RunOptions& options);

}  // namespace doco
