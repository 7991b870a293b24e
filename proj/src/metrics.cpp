#include "doco/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace doco {

namespace {

using MapConst = Eigen::Map<const Eigen::MatrixXd>;

void check(InequalityCheck& c, double lhs, double rhs) {
  const double margin = (lhs - rhs) / (1.0 + rhs);
  c.worst_margin = std::max(c.worst_margin, margin);
  if (lhs > rhs + kInequalitySlack * (1.0 + rhs)) ++c.violations;
}

}  // namespace

ErrorVector error_vector(const SwarmState& state, const Eigen::VectorXd& x_star) {
  const int d = static_cast<int>(x_star.size());
  const int n = static_cast<int>(state.x.size()) / d;
  const MapConst x(state.x.data(), d, n);
  const MapConst y(state.y.data(), d, n);
  const Eigen::VectorXd x_bar = x.rowwise().mean();
  const Eigen::VectorXd y_bar = y.rowwise().mean();
  return {(x_bar - x_star).norm(), (x.colwise() - x_bar).norm(),
          (y.colwise() - y_bar).norm()};
}

Eigen::VectorXd dynamic_regret_series(const TrajectoryRecord& record) {
  const int steps = record.steps();
  Eigen::VectorXd series(steps);
  double sum = 0.0;
  for (int t = 0; t < steps; ++t) {
    sum += record.agent_loss.col(t).mean() - record.opt_loss[t];
    series[t] = sum;
  }
  return series;
}

double static_regret(const TrajectoryRecord& record, const QuadraticSensing& obj) {
  const int steps = record.steps();
  const int d = obj.dim();
  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d);
  for (int t = 0; t < steps; ++t) {
    const auto& c = obj.stacked_matrix(t);
    normal += c.transpose() * c;
    rhs += c.transpose() * obj.measurement(t);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(normal);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("static_regret: singular summed normal equations");
  }
  const Eigen::VectorXd hindsight = llt.solve(rhs);

  double loss_sum = 0.0;
  double hindsight_sum = 0.0;
  for (int t = 0; t < steps; ++t) {
    loss_sum += record.agent_loss.col(t).mean();
    hindsight_sum += obj.global_loss(t, hindsight);
  }
  return loss_sum - hindsight_sum;
}

Eigen::VectorXd path_length_series(const Eigen::MatrixXd& truth,
                                   const Eigen::MatrixXd& a, int steps) {
  if (truth.cols() < steps + 1) {
    throw std::invalid_argument("path_length_series: truth stream too short");
  }
  Eigen::VectorXd series(steps);
  double sum = 0.0;
  for (int t = 0; t < steps; ++t) {
    sum += (truth.col(t + 1) - a * truth.col(t)).norm();
    series[t] = sum;
  }
  return series;
}

Eigen::VectorXd gradient_variation_series(const QuadraticSensing& obj,
                                          const Eigen::MatrixXd& truth,
                                          const Eigen::MatrixXd& a, int steps) {
  Eigen::VectorXd series(steps);
  double sum = 0.0;
  for (int t = 0; t < steps; ++t) {
    const Eigen::VectorXd predicted = a * truth.col(t);
    sum += (obj.stacked_gradient_common(t + 1, predicted) -
            obj.stacked_gradient_common(t, truth.col(t)))
               .norm();
    series[t] = sum;
  }
  return series;
}

InequalityReport verify_step_inequalities(const TrajectoryRecord& record,
                                          const TheoryParams& params) {
  InequalityReport report;
  if (record.algorithm != Algorithm::doco) return report;  // nothing applies

  const double lg = params.l_g;
  const double mu = params.mu;
  const double s = params.sigma_w;
  const double rs = std::sqrt(s);
  const double a = params.alpha;
  const double n = static_cast<double>(params.n);
  const double rn = std::sqrt(n);

  const bool tracking_ok = a <= 1.0 / lg;
  const bool zrec_ok =
      tracking_ok && (s == 0.0 || a <= (1.0 - rs) / (rs * lg));
  report.tracking.applicable = tracking_ok;
  report.consensus_x.applicable = true;
  report.consensus_y.applicable = true;
  report.z_recursion.applicable = zrec_ok;

  const Eigen::Matrix3d phi = phi_matrix(params);

  const int transitions = record.steps() - 1;
  for (int t = 0; t < transitions; ++t) {
    const Eigen::Vector3d& z0 = record.z[t];
    const Eigen::Vector3d& z1 = record.z[t + 1];
    const Eigen::Vector3d& dt = record.d_vec[t];
    if (!z0.allFinite() || !z1.allFinite() || !dt.allFinite()) continue;

    if (tracking_ok) {
      const double rhs =
          (1.0 - a / n * mu) * z0[0] + lg / rn * a * z0[1] + dt[0];
      check(report.tracking, z1[0], rhs);
    }
    check(report.consensus_x, z1[1], s * z0[1] + s * z0[2]);
    {
      const double rhs = s * (1.0 + lg * a) * z0[2] +
                         lg * (1.0 + s + lg * a) * a * z0[1] +
                         rn * lg * (2.0 + lg * a) * a * z0[0] + dt[2];
      check(report.consensus_y, z1[2], rhs);
    }
    if (zrec_ok) {
      const Eigen::Vector3d rhs = phi * z0 + dt;
      for (int k = 0; k < 3; ++k) check(report.z_recursion, z1[k], rhs[k]);
    }
  }
  return report;
}

}  // namespace doco
