#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "doco/net.hpp"
#include "doco/objective.hpp"

namespace doco {

// A fully materialized experiment: network, objective stream for
// t = 0..horizon+1, true optimizer stream and the prediction matrix handed
// to the algorithm. Immutable after build; rebuilding from the same config
// is bit-identical.
struct Scenario {
  std::string name;
  NetworkTopology net;
  QuadraticSensing objective;
  Eigen::MatrixXd prediction;      // A as used by the update (identity if off)
  double prediction_norm = 1.0;    // ||A||_2
  Eigen::MatrixXd truth;           // d x (horizon + 2), column t = x*_t
  double noise_bound = 0.0;        // C_w of the truth generator
  int horizon = 0;

  std::vector<std::string> target_name;  // one per reported position
  std::vector<int> position_index;       // component of x per target

  int agents() const { return net.n; }
  int dim() const { return static_cast<int>(truth.rows()); }
};

struct SinusoidalConfig {
  int n_sensors = 6;
  int n_targets = 3;
  double sample_rate_hz = 100.0;
  double period_s = 10.0;
  double amplitude_min = 0.0;
  double amplitude_max = 2.0;
  double phase_min = 0.0;
  double phase_max = M_PI;
  double noise_scale = 0.0;
  double edge_prob = 0.6;
  bool prediction = true;
  int horizon = 5000;
  std::uint64_t seed = 1;
};

struct RodsConfig {
  double r1 = 1.0;
  double r2 = 1.5;
  double rate1 = 1.0;  // rad per step
  double rate2 = 1.7;
  double theta1_0 = 0.3;
  double theta2_0 = 1.1;
  int horizon = 10000;
  std::uint64_t seed = 1;
};

// Sensor network tracking sinusoidal targets through random scalar
// projections; the truth stream follows the exactly discretized oscillator
// dynamics plus optional hard-bounded noise.
Scenario build_sinusoidal(const SinusoidalConfig& config);

// Four sensors on a ring estimating two constant rod lengths from rotating
// projections; measurement noise lives in the kernel of C_t^T so the
// optimizer never moves while the gradients keep changing.
Scenario build_rods(const RodsConfig& config);

// Unit vector v with C_t^T v = 0: first index-ordered coordinate direction
// with a nonvanishing projection onto the orthogonal complement of
// range(C_t), normalized, sign fixed so its first nonzero entry is
// positive. Throws when the kernel is trivial.
Eigen::VectorXd kernel_unit_vector(const Eigen::MatrixXd& c_t);

}  // namespace doco
