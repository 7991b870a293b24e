#include "doco/algo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doco/rng.hpp"

namespace doco {

namespace {

using MapMat = Eigen::Map<Eigen::MatrixXd>;
using MapConst = Eigen::Map<const Eigen::MatrixXd>;

// (W (x) I) v for a stacked vector v: reshape to d x n and multiply by W^T
// on the right, so block i becomes sum_j W_ij v_j.
Eigen::VectorXd mix(const Eigen::MatrixXd& w, const Eigen::VectorXd& v, int d) {
  const int n = static_cast<int>(w.rows());
  Eigen::VectorXd out(v.size());
  MapMat(out.data(), d, n) = MapConst(v.data(), d, n) * w.transpose();
  return out;
}

}  // namespace

std::string to_string(Algorithm a) {
  return a == Algorithm::doco ? "doco" : "odg";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "doco") return Algorithm::doco;
  if (s == "odg") return Algorithm::odg;
  throw std::invalid_argument("unknown algorithm: " + s);
}

SwarmState init_state(const QuadraticSensing& obj, const Eigen::VectorXd& x0,
                      double alpha) {
  const Eigen::Index nd =
      static_cast<Eigen::Index>(obj.agents()) * obj.dim();
  if (x0.size() != nd) {
    throw std::invalid_argument("init_state: stacked dimension mismatch");
  }
  return {x0, alpha * obj.stacked_gradient(0, x0), 0};
}

void doco_step(SwarmState& state, const QuadraticSensing& obj,
               const Eigen::MatrixXd& w, const Eigen::MatrixXd& a, double alpha,
               Eigen::VectorXd& g_now) {
  const int d = obj.dim();
  const int n = obj.agents();
  if (g_now.size() != state.x.size()) g_now = obj.stacked_gradient(state.t, state.x);

  Eigen::VectorXd x_next = mix(w, state.x - state.y, d);
  MapMat blocks(x_next.data(), d, n);
  blocks = a * blocks;  // per-agent prediction

  Eigen::VectorXd g_next = obj.stacked_gradient(state.t + 1, x_next);
  state.y = mix(w, state.y, d) + alpha * (g_next - g_now);
  state.x = std::move(x_next);
  g_now = std::move(g_next);
  ++state.t;
}

void odg_step(SwarmState& state, const QuadraticSensing& obj,
              const Eigen::MatrixXd& w, const Eigen::MatrixXd& a, double alpha) {
  const int d = obj.dim();
  const int n = obj.agents();
  Eigen::VectorXd x_next =
      mix(w, state.x, d) - alpha * obj.stacked_gradient(state.t, state.x);
  MapMat blocks(x_next.data(), d, n);
  blocks = a * blocks;
  state.x = std::move(x_next);
  ++state.t;
}

double TrajectoryRecord::empirical_g() const {
  double g = 0.0;
  for (double v : grad_norm_max) g = std::max(g, v);
  return g;
}

double TrajectoryRecord::empirical_c_w() const {
  double c = 0.0;
  for (const auto& dv : d_vec) c = std::max(c, dv[0]);
  return c;
}

double TrajectoryRecord::empirical_c_g() const {
  double c = 0.0;
  for (double v : grad_variation) c = std::max(c, v);
  return c;
}

TrajectoryRecord run(const Scenario& scenario, const RunOptions& options) {
  if (options.steps < 1) throw std::invalid_argument("run: need steps >= 1");
  if (options.steps > scenario.horizon) {
    throw std::invalid_argument("run: scenario horizon too short");
  }
  const int n = scenario.agents();
  const int d = scenario.dim();
  const QuadraticSensing& obj = scenario.objective;
  const Eigen::MatrixXd& w = scenario.net.mixing;
  const Eigen::MatrixXd& a = scenario.prediction;
  const int total = options.steps + 1;  // indices 0..steps

  TrajectoryRecord rec;
  rec.algorithm = options.algorithm;
  rec.n = n;
  rec.d = d;
  rec.alpha = options.alpha;
  rec.sigma_w = scenario.net.sigma_w;
  rec.a_norm = scenario.prediction_norm;
  rec.seed = options.seed;
  rec.x.reserve(total);
  rec.y.reserve(total);
  rec.x_star = scenario.truth.leftCols(total + 1);
  rec.agent_loss.resize(n, total);
  rec.opt_loss.reserve(total);

  Eigen::VectorXd x0;
  if (options.init == InitMode::zeros) {
    x0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n) * d);
  } else {
    x0 = Rng(options.seed).gaussian_vector(static_cast<Eigen::Index>(n) * d);
  }

  SwarmState state = init_state(obj, x0, options.alpha);
  if (options.algorithm == Algorithm::odg) state.y.setZero();
  Eigen::VectorXd g_now = obj.stacked_gradient(0, state.x);

  double r_sum = 0.0;
  double p_sum = 0.0;
  double v_sum = 0.0;

  for (int t = 0; t < total; ++t) {
    const auto x_star = scenario.truth.col(t);
    const MapConst blocks(state.x.data(), d, n);
    const Eigen::VectorXd x_bar = blocks.rowwise().mean();

    // Per-agent losses under the global objective and the optimal loss.
    double loss_avg = 0.0;
    for (int i = 0; i < n; ++i) {
      const double li = obj.global_loss(t, blocks.col(i));
      rec.agent_loss(i, t) = li;
      loss_avg += li;
    }
    loss_avg /= n;
    const double f_star = obj.global_loss(t, x_star);
    rec.opt_loss.push_back(f_star);
    r_sum += loss_avg - f_star;
    rec.r_dynamic.push_back(r_sum);

    // Error vector z_t.
    const MapConst y_blocks(state.y.data(), d, n);
    const Eigen::VectorXd y_bar = y_blocks.rowwise().mean();
    Eigen::Vector3d z;
    z[0] = (x_bar - x_star).norm();
    z[1] = (blocks.colwise() - x_bar).norm();
    z[2] = (y_blocks.colwise() - y_bar).norm();
    rec.z.push_back(z);

    // Perturbation d_t and the regularity increments.
    const Eigen::VectorXd predicted = a * x_star;
    const double d1 = (scenario.truth.col(t + 1) - predicted).norm();
    const double dg = (obj.stacked_gradient_common(t + 1, predicted) -
                       obj.stacked_gradient_common(t, x_star))
                          .norm();
    rec.d_vec.push_back({d1, 0.0, options.alpha * dg});
    rec.grad_variation.push_back(dg);
    p_sum += d1;
    v_sum += dg;
    rec.p_path.push_back(p_sum);
    rec.v_grad.push_back(v_sum);

    // Conservation residual of the tracker (Algorithm invariant).
    if (options.algorithm == Algorithm::doco) {
      const Eigen::VectorXd y_sum = y_blocks.rowwise().sum();
      Eigen::VectorXd g_sum = Eigen::VectorXd::Zero(d);
      const MapConst g_blocks(g_now.data(), d, n);
      double g_max = 0.0;
      for (int i = 0; i < n; ++i) {
        g_sum += g_blocks.col(i);
        g_max = std::max(g_max, g_blocks.col(i).norm());
      }
      rec.conservation.push_back((y_sum - options.alpha * g_sum).norm());
      rec.conservation_scale.push_back(1.0 + options.alpha * g_now.norm());
      rec.grad_norm_max.push_back(g_max);
    } else {
      const MapConst g_blocks(g_now.data(), d, n);
      double g_max = 0.0;
      for (int i = 0; i < n; ++i) g_max = std::max(g_max, g_blocks.col(i).norm());
      rec.grad_norm_max.push_back(g_max);
    }

    rec.x.push_back(state.x);
    rec.y.push_back(state.y);
    if (rec.diverged) break;  // the offending row is recorded, then stop

    if (t + 1 < total) {
      if (options.algorithm == Algorithm::doco) {
        doco_step(state, obj, w, a, options.alpha, g_now);
      } else {
        odg_step(state, obj, w, a, options.alpha);
        g_now = obj.stacked_gradient(state.t, state.x);
      }
      if (!state.x.allFinite() || state.x.norm() > 1e9) {
        rec.diverged = true;
        rec.diverged_at = state.t;
      }
    }
  }
  return rec;
}

}  // namespace doco
