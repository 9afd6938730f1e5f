#pragma once

#include <vector>

#include <Eigen/Dense>

#include "plap/core.hpp"

namespace plap {

// Local frame at a boundary point: psi1 is the coordinate along the inward
// normal, psi_prime the tangential coordinates.
struct BoundaryChart {
  Eigen::VectorXd point;
  Eigen::VectorXd normal;
  Eigen::MatrixXd tangents;  // n x (n-1), orthonormal columns

  static BoundaryChart make(const Eigen::VectorXd& point, const Eigen::VectorXd& inward_normal);
  double psi1(const Eigen::VectorXd& x) const;
  Eigen::VectorXd psi_prime(const Eigen::VectorXd& x) const;
};

// Radial strip: h(y) is the radius where the profile takes the value y, for
// y in [0, d]. h is decreasing, so h_y < 0 (front-side branch).
struct HodographStrip {
  double d = 0.0;
  std::vector<double> y;
  std::vector<double> h;
  std::vector<double> h_y;
  std::vector<double> h_yy;
};

struct StripCoefficients {
  Eigen::MatrixXd b;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

// r_in = R/2, R_out = R, m = f(R/2) for a radial state.
GeometryBounds radial_geometry_bounds(const RadialState& s);
// 0.5 * min(r_in, m/2).
double default_strip_width(const GeometryBounds& b);

HodographStrip invert_profile(const RadialState& s, const GeometryBounds& bounds, double d,
                              int samples = 33);

// h_t from the radial regularized equation written for the inverse function.
double radial_strip_rhs(double h, double h_y, double h_yy, const PParams& params, int n);

// Signed front velocity dR/dt. The strip boundary condition fixes
// h_y(0) = -1/front_slope, and h_yy(0) comes from the node next to the front.
double radial_front_velocity(const RadialState& s, const PParams& params, double front_slope = 1.0);

// Coefficients of the evolution for g = psi1 as a function of (f, psi'), with
// the cross terms split symmetrically. g_tangential has n-1 entries.
StripCoefficients planar_strip_coefficients(double g1, const Eigen::VectorXd& g_tangential,
                                            const PParams& params);

// M xi1^2 - 2 g1 sum g_i xi1 xi_i + g1^2 sum xi_i^2, with xi of length n.
double structural_form_bound(double g1, const Eigen::VectorXd& g_tangential, const Eigen::VectorXd& xi,
                             int n);

}  // namespace plap
