#include "doco/net.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doco/rng.hpp"

namespace doco {

Adjacency random_connected_graph(int n, double edge_prob, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_connected_graph: n must be positive");
  if (!(edge_prob > 0.0) || edge_prob > 1.0) {
    throw std::invalid_argument("random_connected_graph: edge_prob must be in (0, 1]");
  }
  Adjacency adj = Adjacency::Constant(n, n, false);
  if (n == 1) return adj;

  Rng rng(seed);

  // Spanning tree over a random node ordering: each node attaches to a
  // uniformly chosen earlier node.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[static_cast<int>(rng.below(i + 1))]);
  }
  for (int i = 1; i < n; ++i) {
    const int j = static_cast<int>(rng.below(i));
    adj(perm[i], perm[j]) = true;
    adj(perm[j], perm[i]) = true;
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (adj(i, j)) continue;
      if (rng.uniform() < edge_prob) {
        adj(i, j) = true;
        adj(j, i) = true;
      }
    }
  }
  return adj;
}

Adjacency cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
  Adjacency adj = Adjacency::Constant(n, n, false);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    adj(i, j) = true;
    adj(j, i) = true;
  }
  return adj;
}

bool is_connected(const Adjacency& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  if (n == 0 || adjacency.cols() != n) return false;
  std::vector<bool> seen(n, false);
  std::vector<int> queue{0};
  seen[0] = true;
  int visited = 1;
  while (!queue.empty()) {
    const int u = queue.back();
    queue.pop_back();
    for (int v = 0; v < n; ++v) {
      if (adjacency(u, v) && !seen[v]) {
        seen[v] = true;
        ++visited;
        queue.push_back(v);
      }
    }
  }
  return visited == n;
}

Eigen::MatrixXd metropolis_weights(const Adjacency& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  if (n == 0 || adjacency.cols() != n) {
    throw std::invalid_argument("metropolis_weights: adjacency must be square");
  }
  if ((adjacency.array() != adjacency.transpose().array()).any()) {
    throw std::invalid_argument("metropolis_weights: adjacency must be symmetric");
  }
  if (!is_connected(adjacency)) {
    throw std::invalid_argument("metropolis_weights: graph must be connected");
  }
  Eigen::VectorXi degree(n);
  for (int i = 0; i < n; ++i) degree[i] = adjacency.row(i).cast<int>().sum();

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j || !adjacency(i, j)) continue;
      w(i, j) = 1.0 / (1.0 + std::max(degree[i], degree[j]));
      off += w(i, j);
    }
    w(i, i) = 1.0 - off;
  }
  return w;
}

Eigen::MatrixXd sinkhorn_balance(const Eigen::MatrixXd& m, double tol,
                                 int max_iter) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) {
    throw std::invalid_argument("sinkhorn_balance: matrix must be square");
  }
  if ((m.array() < 0.0).any()) {
    throw std::invalid_argument("sinkhorn_balance: entries must be nonnegative");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if ((m(i, j) > 0.0) != (m(j, i) > 0.0)) {
        throw std::invalid_argument("sinkhorn_balance: support must be symmetric");
      }
    }
  }
  if ((m.rowwise().sum().array() <= 0.0).any() ||
      (m.colwise().sum().array() <= 0.0).any()) {
    throw std::invalid_argument("sinkhorn_balance: zero row or column");
  }

  Eigen::MatrixXd w = m;
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::ArrayXd row_sum = w.rowwise().sum();
    w.array().colwise() /= row_sum;
    const Eigen::Array<double, 1, Eigen::Dynamic> col_sum = w.colwise().sum();
    w.array().rowwise() /= col_sum;
    const double row_dev = (w.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double col_dev = (w.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (std::max(row_dev, col_dev) < tol) return w;
  }
  throw std::runtime_error("sinkhorn_balance: did not converge within max_iter");
}

Eigen::MatrixXd random_mixing_matrix(const Adjacency& adjacency,
                                     std::uint64_t seed, double tol) {
  const int n = static_cast<int>(adjacency.rows());
  if (n == 1) return Eigen::MatrixXd::Ones(1, 1);
  Rng rng(seed);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (i == j) {
        // self-weights sit below the link weights, giving a non-lazy W
        // with sign-alternating modes and slow mixing
        m(i, i) = 0.1 + 0.5 * rng.uniform();
        continue;
      }
      if (!adjacency(i, j)) continue;
      const double v = 0.1 + rng.uniform();
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return sinkhorn_balance(m, tol);
}

double mixing_rate(const Eigen::MatrixXd& w) {
  const Eigen::Index n = w.rows();
  if (n == 0 || w.cols() != n) {
    throw std::invalid_argument("mixing_rate: matrix must be square");
  }
  if (!is_doubly_stochastic(w)) {
    throw std::invalid_argument("mixing_rate: matrix is not doubly stochastic");
  }
  const Eigen::MatrixXd centered =
      w - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  return spectral_norm(centered);
}

NetworkTopology make_topology(Adjacency adjacency) {
  NetworkTopology net;
  net.n = static_cast<int>(adjacency.rows());
  net.mixing = metropolis_weights(adjacency);
  net.sigma_w = mixing_rate(net.mixing);
  net.adjacency = std::move(adjacency);
  return net;
}

NetworkTopology make_random_topology(int n, double edge_prob,
                                     std::uint64_t seed, double tol) {
  Rng root(seed);
  NetworkTopology net;
  net.n = n;
  net.adjacency = random_connected_graph(n, edge_prob, root.fork(1).seed());
  net.mixing = random_mixing_matrix(net.adjacency, root.fork(2).seed(), tol);
  net.sigma_w = mixing_rate(net.mixing);
  return net;
}

}  // namespace doco
