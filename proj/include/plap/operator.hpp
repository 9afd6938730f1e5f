#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "plap/core.hpp"

namespace plap {

// x^e with cheap paths for the exponents that appear for p = 3 and p = 4.
double fast_pow(double x, double e);

// (s + eps)^{q-1}: the flux factor at squared gradient s.
double flux_factor(double s, const PParams& params);
// Radial flux (g^2 + eps)^{q-1} g.
double radial_flux(double g, const PParams& params);

struct CoefficientMatrix {
  Eigen::MatrixXd a;
};

// Closed-form eigenvalues of the coefficient matrix at squared gradient s:
// alpha (multiplicity n-1, tangential) and big = (s+eps)^{q-2}((p-1)s+eps).
struct CoefficientEigenvalues {
  double alpha = 0.0;
  double big = 0.0;
};
CoefficientEigenvalues coefficient_eigenvalues(double s, const PParams& params);

CoefficientMatrix coefficient_matrix(const Eigen::VectorXd& grad, const PParams& params);

// trace(a(grad) * hessian).
double p_laplacian_nondiv(const Eigen::VectorXd& grad, const Eigen::MatrixXd& hessian,
                          const PParams& params);
// Unregularized normal form |Df|^{p-2}(Lap f + (p-2) f_nn); ignores epsilon.
double p_laplacian_normal_form(const Eigen::VectorXd& grad, const Eigen::MatrixXd& hessian,
                               const PParams& params);

// Number of samples in a full box stencil in dimension n (3^n).
int box_stencil_size(int n);
// Index of the sample at offsets o[k] in {-1, 0, 1}, lexicographic with axis 0 fastest.
int box_stencil_index(std::span<const int> offsets);

// Conservative divergence-form discretization at the stencil center. The stencil
// holds 3^n samples (n = params.n); NaN marks a missing sample.
double p_laplacian_div_fd(std::span<const double> stencil, double h, const PParams& params);

// Smooth bump test function in one spatial variable (slab coordinate or radius),
// optionally times a bump in time. amplitude 0 gives the zero function.
struct TestFunction {
  double center = 0.0;
  double radius = 0.1;
  double amplitude = 1.0;
  // Time window; t_halfwidth = 0 means constant in time.
  double t_center = 0.0;
  double t_halfwidth = 0.0;

  double value(double x, double t) const;
  double dx(double x, double t) const;
  double dt(double x, double t) const;
  double support_lo() const { return center - radius; }
  double support_hi() const { return center + radius; }
};

struct ProfileSnapshot {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> f;
};

// One-dimensional profiles in time. radial_dim = 0 means a slab with flat
// measure; radial_dim = n >= 1 means x is a radius with measure r^{n-1}.
struct ProfileTrajectory {
  PParams params;
  int radial_dim = 0;
  std::vector<ProfileSnapshot> snapshots;
};

ProfileTrajectory to_profiles(const RadialTrajectory& traj, const PParams& params);

// |LHS - RHS| of the weak identity over [t1, t2]; trapezoid in space and time,
// endpoint integrals linearly interpolated between bracketing snapshots.
double weak_residual(const ProfileTrajectory& traj, const TestFunction& theta, double t1, double t2);

}  // namespace plap
