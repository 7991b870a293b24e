#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "doco/objective.hpp"
#include "doco/rng.hpp"

using namespace doco;

namespace {

QuadraticSensing identity_sensing(const Eigen::VectorXd& target) {
  const int d = static_cast<int>(target.size());
  std::vector<Eigen::MatrixXd> rows;
  for (int i = 0; i < d; ++i) {
    rows.push_back(Eigen::MatrixXd::Identity(d, d).row(i));
  }
  return QuadraticSensing(rows, {target});
}

// Power iteration for the top eigenvalue of a symmetric PSD matrix.
double top_eigen_oracle(const Eigen::MatrixXd& s) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(s.rows()).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 2000; ++it) {
    v = (s * v).normalized();
    lambda = v.dot(s * v);
  }
  return lambda;
}

}  // namespace

TEST_CASE("local gradient") {
  std::vector<Eigen::MatrixXd> rows{(Eigen::MatrixXd(1, 2) << 1, 0).finished(),
                                    (Eigen::MatrixXd(1, 2) << 0, 1).finished()};
  QuadraticSensing obj(rows, {Eigen::VectorXd::Zero(2)});

  const Eigen::VectorXd g = obj.local_gradient(0, 0, (Eigen::VectorXd(2) << 2, 3).finished());
  CHECK(g[0] == doctest::Approx(2.0));
  CHECK(g[1] == doctest::Approx(0.0));

  // zero residual at the optimum
  const Eigen::VectorXd target = (Eigen::VectorXd(3) << 1, -2, 0.5).finished();
  QuadraticSensing id = identity_sensing(target);
  for (int i = 0; i < 3; ++i) {
    CHECK(id.local_gradient(i, 0, target).norm() == doctest::Approx(0.0));
  }

  CHECK_THROWS_AS(obj.local_gradient(0, 0, Eigen::VectorXd::Zero(3)),
                  std::invalid_argument);
}

TEST_CASE("local gradient matches central finite differences") {
  Rng rng(11);
  std::vector<Eigen::MatrixXd> rows;
  for (int i = 0; i < 2; ++i) {
    Eigen::MatrixXd block(2, 3);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 3; ++c) block(r, c) = rng.gaussian();
    }
    rows.push_back(block);
  }
  Eigen::VectorXd y = rng.gaussian_vector(4);
  QuadraticSensing obj(rows, {y});

  const double h = 1e-6;
  for (int agent = 0; agent < 2; ++agent) {
    const Eigen::VectorXd x = rng.gaussian_vector(3);
    const Eigen::VectorXd g = obj.local_gradient(agent, 0, x);
    for (int k = 0; k < 3; ++k) {
      Eigen::VectorXd hi = x, lo = x;
      hi[k] += h;
      lo[k] -= h;
      const double fd =
          (obj.local_loss(agent, 0, hi) - obj.local_loss(agent, 0, lo)) / (2 * h);
      CHECK(g[k] == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("exact optimizer") {
  const Eigen::VectorXd v = (Eigen::VectorXd(3) << 0.3, -1.2, 2.0).finished();
  QuadraticSensing id = identity_sensing(v);
  CHECK((id.exact_optimizer(0) - v).norm() < 1e-12);

  Rng rng(5);
  std::vector<Eigen::MatrixXd> rows;
  for (int i = 0; i < 5; ++i) {
    Eigen::MatrixXd row(1, 4);
    for (int c = 0; c < 4; ++c) row(0, c) = rng.gaussian();
    rows.push_back(row);
  }
  const Eigen::VectorXd y = rng.gaussian_vector(5);
  QuadraticSensing obj(rows, {y});
  const Eigen::VectorXd x_star = obj.exact_optimizer(0);
  CHECK(obj.global_gradient(0, x_star).norm() < 1e-10 * (1.0 + y.norm()));
}

TEST_CASE("convexity constants") {
  QuadraticSensing id = identity_sensing(Eigen::VectorXd::Zero(3));
  const ConvexityConstants k = id.convexity_constants();
  CHECK(k.l_g == doctest::Approx(1.0));
  CHECK(k.mu == doctest::Approx(1.0));

  // rank-deficient stack is rejected outright
  std::vector<Eigen::MatrixXd> flat{(Eigen::MatrixXd(1, 2) << 2, 0).finished()};
  CHECK_THROWS_AS(QuadraticSensing(flat, {Eigen::VectorXd::Zero(1)}),
                  std::invalid_argument);

  // multi-row agents against a power-iteration oracle
  Rng rng(17);
  std::vector<Eigen::MatrixXd> rows;
  for (int i = 0; i < 3; ++i) {
    Eigen::MatrixXd block(2, 4);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 4; ++c) block(r, c) = rng.gaussian();
    }
    rows.push_back(block);
  }
  QuadraticSensing obj(rows, {rng.gaussian_vector(6)});
  const ConvexityConstants got = obj.convexity_constants();

  double l_ref = 0.0;
  Eigen::MatrixXd stacked(6, 4);
  for (int i = 0; i < 3; ++i) {
    l_ref = std::max(l_ref, top_eigen_oracle(rows[i].transpose() * rows[i]));
    stacked.middleRows(2 * i, 2) = rows[i];
  }
  const Eigen::MatrixXd gram = stacked.transpose() * stacked;
  const double mu_ref =
      top_eigen_oracle(gram) -
      top_eigen_oracle(top_eigen_oracle(gram) * Eigen::MatrixXd::Identity(4, 4) - gram);
  CHECK(got.l_g == doctest::Approx(l_ref).epsilon(1e-10));
  CHECK(got.mu == doctest::Approx(mu_ref).epsilon(1e-8));
}

TEST_CASE("gradient identities and convexity bounds") {
  Rng rng(23);
  std::vector<Eigen::MatrixXd> rows;
  for (int i = 0; i < 4; ++i) {
    Eigen::MatrixXd row(1, 3);
    for (int c = 0; c < 3; ++c) row(0, c) = rng.gaussian();
    rows.push_back(row);
  }
  std::vector<Eigen::VectorXd> ys;
  for (int t = 0; t < 3; ++t) ys.push_back(rng.gaussian_vector(4));
  QuadraticSensing obj(rows, ys);
  const ConvexityConstants k = obj.convexity_constants();

  for (int t = 0; t < 3; ++t) {
    const Eigen::VectorXd x = rng.gaussian_vector(3);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(3);
    for (int i = 0; i < 4; ++i) sum += obj.local_gradient(i, t, x);
    CHECK((sum - obj.global_gradient(t, x)).norm() < 1e-12 * (1.0 + sum.norm()));

    const Eigen::VectorXd x_star = obj.exact_optimizer(t);
    CHECK(obj.global_loss(t, x) - obj.global_loss(t, x_star) >=
          0.5 * k.mu * (x - x_star).squaredNorm() - 1e-10);

    const Eigen::VectorXd z = rng.gaussian_vector(3);
    for (int i = 0; i < 4; ++i) {
      const double lhs =
          (obj.local_gradient(i, t, x) - obj.local_gradient(i, t, z)).norm();
      CHECK(lhs <= k.l_g * (x - z).norm() + 1e-12);
    }
  }
}
