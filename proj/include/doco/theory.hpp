#pragma once

#include <Eigen/Dense>

namespace doco {

// Problem and network constants feeding every closed-form bound.
struct TheoryParams {
  double l_g = 0.0;     // local gradient smoothness
  double mu = 0.0;      // global strong convexity
  int n = 1;            // agent count
  double sigma_w = 0.0; // network mixing rate, in [0, 1)
  double alpha = 0.0;   // stepsize
  double c_w = 0.0;     // bound on ||A x*_t - x*_{t+1}||
  double c_g = 0.0;     // bound on the gradient variation at the optimizers
  double g = 0.0;       // bound on local gradient norms along the run
};

// 3x3 contraction matrix coupling tracking and consensus errors:
// z_{t+1} <= Phi(alpha) z_t + d_t elementwise.
Eigen::Matrix3d phi_matrix(const TheoryParams& p);

// Largest admissible stepsize: min of n/mu, a mixing-limited term, 1/L_g
// and (1 - sqrt(sigma))/sqrt(sigma) / L_g. The sigma-denominated terms are
// +inf at sigma_w = 0; sigma_w >= 1 is rejected.
double stepsize_upper_bound(const TheoryParams& p);

// Largest root modulus of the characteristic cubic, in closed form.
double spectral_radius_3x3(const Eigen::Matrix3d& m);

// Adjugate entries and determinant of I - Phi(alpha), plus the regret
// constant K = 2 n G max{c_ij} / C_inv.
struct StabilityConstants {
  Eigen::Matrix3d c;  // adjugate of I - Phi(alpha)
  double det;         // det(I - Phi(alpha))
  double c_inv;       // same expression as det
  double max_c;       // max over the c entries
  double k;           // regret constant
};

// Throws when det(I - Phi(alpha)) <= 0 (stepsize outside the stability
// region, which includes alpha = 0).
StabilityConstants stability_constants(const TheoryParams& p);

// K (C1 + C2 + C3 + P + V) with C1..C3 the initial error components.
double regret_bound(const StabilityConstants& k, double c1, double c2, double c3,
                    double p_path, double v_grad);

// limsup_t ||x_{i,t} - x*_t|| <= 2 max{c_ij} (C_w + C_g) / C_inv.
double asymptotic_tracking_bound(const StabilityConstants& k, double c_w,
                                 double c_g);

}  // namespace doco
