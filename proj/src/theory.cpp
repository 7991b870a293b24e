#include "doco/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace doco {

namespace {

void check_params(const TheoryParams& p) {
  if (!(p.l_g > 0.0) || !(p.mu > 0.0)) {
    throw std::invalid_argument("theory: need L_g > 0 and mu > 0");
  }
  if (p.n < 1) throw std::invalid_argument("theory: need n >= 1");
  if (p.sigma_w < 0.0 || p.sigma_w >= 1.0) {
    throw std::invalid_argument("theory: need sigma_w in [0, 1)");
  }
}

}  // namespace

Eigen::Matrix3d phi_matrix(const TheoryParams& p) {
  check_params(p);
  const double n = static_cast<double>(p.n);
  const double rn = std::sqrt(n);
  const double a = p.alpha;
  Eigen::Matrix3d phi;
  phi << 1.0 - p.mu / n * a, p.l_g / rn * a, 0.0,
         0.0, p.sigma_w, p.sigma_w,
         3.0 * rn * p.l_g * a, p.l_g * (2.0 + p.sigma_w) * a, std::sqrt(p.sigma_w);
  return phi;
}

double stepsize_upper_bound(const TheoryParams& p) {
  check_params(p);
  const double n = static_cast<double>(p.n);
  double bound = std::min(n / p.mu, 1.0 / p.l_g);
  if (p.sigma_w > 0.0) {
    const double s = p.sigma_w;
    const double rs = std::sqrt(s);
    const double mixing_term = (1.0 - s) * (1.0 - rs) /
                               (s * (2.0 + s) + 3.0 * s * (n / p.mu) * p.l_g) /
                               p.l_g;
    const double consensus_term = (1.0 - rs) / rs / p.l_g;
    bound = std::min({bound, mixing_term, consensus_term});
  }
  return bound;
}

double spectral_radius_3x3(const Eigen::Matrix3d& m) {
  // Characteristic polynomial: lambda^3 - tr lambda^2 + m2 lambda - det,
  // with m2 the sum of the principal 2x2 minors.
  const double tr = m.trace();
  const double m2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) +
                    m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                    m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  const double det = m.determinant();

  // Depressed cubic x^3 + p x + q via lambda = x + tr/3.
  const double s = tr / 3.0;
  const double p = m2 - 3.0 * s * s;
  const double q = -2.0 * s * s * s + m2 * s - det;

  const double half_q = 0.5 * q;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;

  if (disc > 0.0) {
    // One real root, one complex conjugate pair.
    const double root = std::sqrt(disc);
    const double u = std::cbrt(-half_q + root);
    const double v = std::cbrt(-half_q - root);
    const double x_real = u + v;
    const double re = -0.5 * x_real + s;
    const double im = 0.5 * std::sqrt(3.0) * (u - v);
    return std::max(std::abs(x_real + s), std::hypot(re, im));
  }

  if (p == 0.0) return std::abs(s);  // triple root

  // Three real roots (trigonometric form).
  const double r = std::sqrt(-third_p);
  double cos_arg = half_q / (third_p * r);  // 3q / (2p) * sqrt(-3/p)
  cos_arg = std::clamp(cos_arg, -1.0, 1.0);
  const double phi = std::acos(cos_arg);
  double radius = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double x = 2.0 * r * std::cos((phi - 2.0 * M_PI * k) / 3.0);
    radius = std::max(radius, std::abs(x + s));
  }
  return radius;
}

StabilityConstants stability_constants(const TheoryParams& p) {
  check_params(p);
  if (!(p.alpha > 0.0)) {
    throw std::invalid_argument("stability_constants: stepsize must be positive");
  }
  const double n = static_cast<double>(p.n);
  const double rn = std::sqrt(n);
  const double s = p.sigma_w;
  const double rs = std::sqrt(s);
  const double lg = p.l_g;
  const double a = p.alpha;

  StabilityConstants out;
  out.c(0, 0) = (1.0 - rs) * (1.0 - s) - s * (2.0 + s) * lg * a;
  out.c(0, 1) = (1.0 - rs) * lg * a / rn;
  out.c(0, 2) = s * lg * a / rn;
  out.c(1, 0) = 3.0 * rn * s * lg * a;
  out.c(1, 1) = p.mu / n * (1.0 - rs) * a;
  out.c(1, 2) = p.mu / n * s * a;
  out.c(2, 0) = 3.0 * rn * (1.0 - s) * lg * a;
  out.c(2, 1) = 3.0 * lg * lg * a * a + p.mu / n * (2.0 + s) * lg * a * a;
  out.c(2, 2) = p.mu / n * (1.0 - s) * a;
  out.det = p.mu / n * (1.0 - s) * (1.0 - rs) * a -
            p.mu / n * s * (2.0 + s) * lg * a * a - 3.0 * s * lg * lg * a * a;
  out.c_inv = out.det;
  if (!(out.det > 0.0)) {
    throw std::invalid_argument(
        "stability_constants: stepsize outside the stability region");
  }
  out.max_c = out.c.maxCoeff();
  out.k = 2.0 * n * p.g / out.c_inv * out.max_c;
  return out;
}

double regret_bound(const StabilityConstants& k, double c1, double c2, double c3,
                    double p_path, double v_grad) {
  return k.k * (c1 + c2 + c3 + p_path + v_grad);
}

double asymptotic_tracking_bound(const StabilityConstants& k, double c_w,
                                 double c_g) {
  return 2.0 / k.c_inv * k.max_c * (c_w + c_g);
}

}  // namespace doco
