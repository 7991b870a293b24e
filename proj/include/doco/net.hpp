#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "doco/linalg.hpp"

namespace doco {

using Adjacency = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Fixed undirected communication graph together with its doubly stochastic
// mixing matrix W and mixing rate sigma_w = ||W - (1/n) 1 1^T||_2.
struct NetworkTopology {
  int n = 0;
  Adjacency adjacency;
  Eigen::MatrixXd mixing;
  double sigma_w = 0.0;
};

// Connected graph on n nodes: a random spanning tree plus each remaining
// edge independently with probability edge_prob. Deterministic per seed.
Adjacency random_connected_graph(int n, double edge_prob, std::uint64_t seed);

// Ring on n >= 3 nodes.
Adjacency cycle_graph(int n);

bool is_connected(const Adjacency& adjacency);

// W_ij = 1 / (1 + max(deg_i, deg_j)) on edges, diagonal absorbs the rest.
// Doubly stochastic by construction; throws on a disconnected graph.
Eigen::MatrixXd metropolis_weights(const Adjacency& adjacency);

// Alternating row/column normalization until every row and column sum is
// within tol of one. Requires nonnegative input with symmetric support and
// no zero row or column; throws if max_iter passes are not enough.
Eigen::MatrixXd sinkhorn_balance(const Eigen::MatrixXd& m, double tol = 1e-12,
                                 int max_iter = 10000);

// Symmetric positive weights on the adjacency support (plus the diagonal),
// Sinkhorn-balanced to doubly stochastic.
Eigen::MatrixXd random_mixing_matrix(const Adjacency& adjacency,
                                     std::uint64_t seed, double tol = 1e-12);

// Spectral norm of W - (1/n) 1 1^T; throws unless W is doubly stochastic.
double mixing_rate(const Eigen::MatrixXd& w);

NetworkTopology make_topology(Adjacency adjacency);
NetworkTopology make_random_topology(int n, double edge_prob,
                                     std::uint64_t seed, double tol = 1e-12);

}  // namespace doco
