#include "doco/objective.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace doco {

namespace {

void check_positive_definite(const Eigen::MatrixXd& c, int t) {
  const Eigen::MatrixXd gram = c.transpose() * c;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 1e-12 * std::max(1.0, hi))) {
    throw std::invalid_argument(
        "QuadraticSensing: stacked C^T C is not positive definite at t=" +
        std::to_string(t));
  }
}

}  // namespace

QuadraticSensing::QuadraticSensing(const std::vector<Eigen::MatrixXd>& agent_rows,
                                   std::vector<Eigen::VectorXd> measurements)
    : y_(std::move(measurements)) {
  if (agent_rows.empty()) {
    throw std::invalid_argument("QuadraticSensing: need at least one agent");
  }
  d_ = static_cast<int>(agent_rows.front().cols());
  Eigen::Index rows = 0;
  offsets_.push_back(0);
  for (const auto& block : agent_rows) {
    if (block.cols() != d_ || block.rows() < 1) {
      throw std::invalid_argument("QuadraticSensing: inconsistent agent rows");
    }
    rows += block.rows();
    offsets_.push_back(rows);
  }
  Eigen::MatrixXd stacked(rows, d_);
  for (std::size_t i = 0; i < agent_rows.size(); ++i) {
    stacked.middleRows(offsets_[i], offsets_[i + 1] - offsets_[i]) = agent_rows[i];
  }
  c_.push_back(std::move(stacked));
  validate();
  static_llt_.compute(c_.front().transpose() * c_.front());
}

QuadraticSensing::QuadraticSensing(std::vector<Eigen::MatrixXd> stacked_per_step,
                                   std::vector<Eigen::Index> row_offsets,
                                   std::vector<Eigen::VectorXd> measurements)
    : c_(std::move(stacked_per_step)),
      offsets_(std::move(row_offsets)),
      y_(std::move(measurements)) {
  if (c_.empty() || offsets_.size() < 2 || offsets_.front() != 0) {
    throw std::invalid_argument("QuadraticSensing: bad shape");
  }
  d_ = static_cast<int>(c_.front().cols());
  validate();
  if (c_.size() == 1) {
    static_llt_.compute(c_.front().transpose() * c_.front());
  }
}

void QuadraticSensing::validate() const {
  const Eigen::Index rows = offsets_.back();
  if (c_.size() != 1 && c_.size() != y_.size()) {
    throw std::invalid_argument(
        "QuadraticSensing: need one stacked matrix total or one per step");
  }
  if (y_.empty()) {
    throw std::invalid_argument("QuadraticSensing: need at least one step");
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) {
    if (offsets_[i] <= offsets_[i - 1]) {
      throw std::invalid_argument("QuadraticSensing: offsets must increase");
    }
  }
  for (std::size_t t = 0; t < c_.size(); ++t) {
    if (c_[t].rows() != rows || c_[t].cols() != d_) {
      throw std::invalid_argument("QuadraticSensing: inconsistent stacked matrix");
    }
    check_positive_definite(c_[t], static_cast<int>(t));
  }
  for (const auto& y : y_) {
    if (y.size() != rows) {
      throw std::invalid_argument("QuadraticSensing: measurement size mismatch");
    }
  }
}

Eigen::VectorXd QuadraticSensing::local_gradient(int agent, int t,
                                                 const Eigen::VectorXd& x) const {
  if (x.size() != d_) {
    throw std::invalid_argument("local_gradient: decision dimension mismatch");
  }
  const auto& c = stacked_matrix(t);
  const Eigen::Index lo = offsets_.at(agent);
  const Eigen::Index m = offsets_.at(agent + 1) - lo;
  const auto block = c.middleRows(lo, m);
  return block.transpose() * (block * x - measurement(t).segment(lo, m));
}

double QuadraticSensing::local_loss(int agent, int t, const Eigen::VectorXd& x) const {
  const auto& c = stacked_matrix(t);
  const Eigen::Index lo = offsets_.at(agent);
  const Eigen::Index m = offsets_.at(agent + 1) - lo;
  return 0.5 * (c.middleRows(lo, m) * x - measurement(t).segment(lo, m)).squaredNorm();
}

double QuadraticSensing::global_loss(int t, const Eigen::VectorXd& x) const {
  return 0.5 * (stacked_matrix(t) * x - measurement(t)).squaredNorm();
}

Eigen::VectorXd QuadraticSensing::global_gradient(int t, const Eigen::VectorXd& x) const {
  const auto& c = stacked_matrix(t);
  return c.transpose() * (c * x - measurement(t));
}

Eigen::VectorXd QuadraticSensing::stacked_gradient(int t,
                                                   const Eigen::VectorXd& x_stacked) const {
  const int n = agents();
  if (x_stacked.size() != static_cast<Eigen::Index>(n) * d_) {
    throw std::invalid_argument("stacked_gradient: stacked dimension mismatch");
  }
  Eigen::VectorXd g(x_stacked.size());
  for (int i = 0; i < n; ++i) {
    g.segment(i * d_, d_) = local_gradient(i, t, x_stacked.segment(i * d_, d_));
  }
  return g;
}

Eigen::VectorXd QuadraticSensing::stacked_gradient_common(int t,
                                                          const Eigen::VectorXd& x) const {
  const int n = agents();
  Eigen::VectorXd g(static_cast<Eigen::Index>(n) * d_);
  for (int i = 0; i < n; ++i) {
    g.segment(i * d_, d_) = local_gradient(i, t, x);
  }
  return g;
}

Eigen::VectorXd QuadraticSensing::exact_optimizer(int t) const {
  const auto& c = stacked_matrix(t);
  const Eigen::VectorXd rhs = c.transpose() * measurement(t);
  if (c_.size() == 1) {
    return static_llt_.solve(rhs);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(c.transpose() * c);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("exact_optimizer: singular normal equations at t=" +
                             std::to_string(t));
  }
  return llt.solve(rhs);
}

ConvexityConstants QuadraticSensing::convexity_constants() const {
  double l_g = 0.0;
  double mu = std::numeric_limits<double>::infinity();
  const int n = agents();
  for (std::size_t t = 0; t < c_.size(); ++t) {
    const auto& c = c_[t];
    for (int i = 0; i < n; ++i) {
      const Eigen::Index lo = offsets_[i];
      const Eigen::Index m = offsets_[i + 1] - lo;
      const auto block = c.middleRows(lo, m);
      if (m == 1) {
        l_g = std::max(l_g, block.squaredNorm());
      } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            block.transpose() * block, Eigen::EigenvaluesOnly);
        l_g = std::max(l_g, es.eigenvalues().maxCoeff());
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.transpose() * c,
                                                      Eigen::EigenvaluesOnly);
    mu = std::min(mu, es.eigenvalues().minCoeff());
  }
  if (!(mu > 0.0)) {
    throw std::runtime_error("convexity_constants: global loss is not strongly convex");
  }
  return {l_g, mu};
}

}  // namespace doco
