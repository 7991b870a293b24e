#include "doco/scenarios.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "doco/dynamics.hpp"
#include "doco/linalg.hpp"
#include "doco/rng.hpp"

namespace doco {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Substream tags for scenario randomness.
enum : std::uint64_t {
  kTagSignals = 1,
  kTagRows = 2,
  kTagNetwork = 3,
  kTagNoise = 4,
};

}  // namespace

Eigen::VectorXd kernel_unit_vector(const Eigen::MatrixXd& c_t) {
  const Eigen::Index m = c_t.rows();
  const Eigen::Index d = c_t.cols();
  if (m == 0) throw std::invalid_argument("kernel_unit_vector: empty matrix");

  // Orthonormal basis of range(C_t) via unpivoted QR, then project the
  // coordinate directions onto its complement in index order.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(c_t);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, std::min(m, d));
  // Rank detection against the leading column scale.
  const Eigen::MatrixXd r = qr.matrixQR().topRows(std::min(m, d)).triangularView<Eigen::Upper>();
  const double scale = std::max(1.0, std::abs(r(0, 0)));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    if (std::abs(r(i, i)) > 1e-13 * scale) ++rank;
  }
  const Eigen::MatrixXd basis = q.leftCols(rank);
  if (rank >= m) {
    throw std::invalid_argument("kernel_unit_vector: kernel of C_t^T is trivial");
  }

  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(m, i);
    v -= basis * (basis.transpose() * v);
    const double norm = v.norm();
    if (norm > 1e-6) {
      v /= norm;
      for (Eigen::Index j = 0; j < m; ++j) {
        if (std::abs(v[j]) > 1e-9) {
          if (v[j] < 0.0) v = -v;
          break;
        }
      }
      return v;
    }
  }
  throw std::runtime_error("kernel_unit_vector: no well-conditioned kernel direction");
}

Scenario build_sinusoidal(const SinusoidalConfig& config) {
  if (config.n_sensors < 1 || config.n_targets < 1) {
    throw std::invalid_argument("build_sinusoidal: need sensors and targets");
  }
  if (!(config.sample_rate_hz > 0.0) || !(config.period_s > 0.0)) {
    throw std::invalid_argument("build_sinusoidal: rates must be positive");
  }
  if (config.horizon < 1) {
    throw std::invalid_argument("build_sinusoidal: horizon must be positive");
  }

  const int d = 2 * config.n_targets;
  const int steps = config.horizon + 2;
  const double omega = kTwoPi / config.period_s;
  const double dt = 1.0 / config.sample_rate_hz;
  Rng root(config.seed);

  // Per-target amplitude and phase, then the exact oscillator blocks.
  Rng signals = root.fork(kTagSignals);
  Eigen::VectorXd x0(d);
  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(config.n_targets);
  for (int j = 0; j < config.n_targets; ++j) {
    const double amp = signals.uniform(config.amplitude_min, config.amplitude_max);
    const double phase = signals.uniform(config.phase_min, config.phase_max);
    x0[2 * j] = amp * std::sin(phase);
    x0[2 * j + 1] = omega * amp * std::cos(phase);
    blocks.push_back(discretize_oscillator(omega, dt));
  }
  const Eigen::MatrixXd oscillator = block_diag_dynamics(blocks);

  DynamicsModel model(oscillator, config.noise_scale, root.fork(kTagNoise).seed());
  Eigen::MatrixXd truth(d, steps);
  truth.col(0) = x0;
  for (int t = 1; t < steps; ++t) truth.col(t) = model.propagate(truth.col(t - 1));

  // Random scalar measurement rows, redrawn until the stacked normal matrix
  // is safely positive definite.
  Rng rows = root.fork(kTagRows);
  Eigen::MatrixXd c(config.n_sensors, d);
  bool ok = false;
  for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
    for (int i = 0; i < config.n_sensors; ++i) {
      for (int k = 0; k < d; ++k) c(i, k) = rows.gaussian();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.transpose() * c,
                                                      Eigen::EigenvaluesOnly);
    ok = es.eigenvalues().minCoeff() > 1e-8;
  }
  if (!ok) {
    throw std::runtime_error("build_sinusoidal: could not draw a positive definite C");
  }

  std::vector<Eigen::VectorXd> measurements(steps);
  for (int t = 0; t < steps; ++t) measurements[t] = c * truth.col(t);

  std::vector<Eigen::MatrixXd> agent_rows;
  agent_rows.reserve(config.n_sensors);
  for (int i = 0; i < config.n_sensors; ++i) agent_rows.push_back(c.row(i));

  Scenario sc{.name = "sinusoidal",
              .net = make_random_topology(config.n_sensors, config.edge_prob,
                                          root.fork(kTagNetwork).seed(), 1e-14),
              .objective = QuadraticSensing(agent_rows, std::move(measurements)),
              .prediction = config.prediction
                                ? oscillator
                                : Eigen::MatrixXd::Identity(d, d),
              .truth = std::move(truth),
              .noise_bound = model.noise_bound(),
              .horizon = config.horizon};
  sc.prediction_norm = spectral_norm(sc.prediction);
  for (int j = 0; j < config.n_targets; ++j) {
    sc.target_name.push_back("target" + std::to_string(j + 1));
    sc.position_index.push_back(2 * j);
  }
  return sc;
}

Scenario build_rods(const RodsConfig& config) {
  if (!(config.r1 > 0.0) || !(config.r2 > 0.0)) {
    throw std::invalid_argument("build_rods: rod lengths must be positive");
  }
  if (config.horizon < 1) {
    throw std::invalid_argument("build_rods: horizon must be positive");
  }
  const int steps = config.horizon + 2;
  const Eigen::Vector2d lengths(config.r1, config.r2);

  std::vector<Eigen::MatrixXd> stacked(steps);
  std::vector<Eigen::VectorXd> measurements(steps);
  for (int t = 0; t < steps; ++t) {
    double theta1 = config.theta1_0 + config.rate1 * t;
    double theta2 = config.theta2_0 + config.rate2 * t;
    Eigen::MatrixXd c(4, 2);
    bool conditioned = false;
    for (int tries = 0; tries < 8 && !conditioned; ++tries) {
      c << std::cos(theta1), 0.0,
           std::cos(theta2), 0.0,
           0.0, std::sin(theta1),
           0.0, std::sin(theta2);
      // C^T C is diagonal here; guard against near-singular angles.
      const double lo = std::min(c.col(0).squaredNorm(), c.col(1).squaredNorm());
      conditioned = lo >= 1e-8;
      if (!conditioned) {
        theta1 += 1e-6;
        theta2 += 1e-6;
      }
    }
    if (!conditioned) {
      throw std::runtime_error("build_rods: degenerate angles at t=" +
                               std::to_string(t));
    }
    measurements[t] = c * lengths + kernel_unit_vector(c);
    stacked[t] = std::move(c);
  }

  Scenario sc{.name = "rods",
              .net = make_topology(cycle_graph(4)),
              .objective = QuadraticSensing(std::move(stacked), {0, 1, 2, 3, 4},
                                            std::move(measurements)),
              .prediction = Eigen::MatrixXd::Identity(2, 2),
              .prediction_norm = 1.0,
              .truth = lengths.replicate(1, steps),
              .noise_bound = 0.0,
              .horizon = config.horizon,
              .target_name = {"rod1", "rod2"},
              .position_index = {0, 1}};
  return sc;
}

}  // namespace doco
