#include "doco/linalg.hpp"

namespace doco {

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() <= 64 && m.cols() <= 64) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
  }
  // Power iteration on the Gram matrix with a fixed start vector.
  const Eigen::MatrixXd gram = m.transpose() * m;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(gram.rows()).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXd w = gram * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    w /= norm;
    const double next = w.dot(gram * w);
    if (std::abs(next - lambda) <= 1e-14 * (1.0 + std::abs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
    v = w;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

bool is_doubly_stochastic(const Eigen::MatrixXd& w, double tol) {
  if (w.rows() != w.cols() || w.rows() == 0) return false;
  if ((w.array() < -tol).any()) return false;
  const Eigen::VectorXd row = w.rowwise().sum();
  const Eigen::VectorXd col = w.colwise().sum();
  return (row.array() - 1.0).abs().maxCoeff() <= tol &&
         (col.array() - 1.0).abs().maxCoeff() <= tol;
}

}  // namespace doco
