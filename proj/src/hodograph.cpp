#include "plap/hodograph.hpp"

#include <algorithm>
#include <cmath>

#include "plap/interpolation.hpp"
#include "plap/operator.hpp"

namespace plap {

BoundaryChart BoundaryChart::make(const Eigen::VectorXd& point, const Eigen::VectorXd& inward_normal) {
  const auto n = point.size();
  if (inward_normal.size() != n || inward_normal.norm() == 0.0)
    throw Error(ErrorKind::InvalidArgument, "chart needs a nonzero normal of matching size");
  BoundaryChart c;
  c.point = point;
  c.normal = inward_normal.normalized();
  // Gram-Schmidt against the coordinate axes, skipping the most aligned one.
  c.tangents.resize(n, n - 1);
  Eigen::Index skip;
  c.normal.cwiseAbs().maxCoeff(&skip);
  Eigen::Index col = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == skip) continue;
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, k);
    v -= v.dot(c.normal) * c.normal;
    for (Eigen::Index j = 0; j < col; ++j) v -= v.dot(c.tangents.col(j)) * c.tangents.col(j);
    c.tangents.col(col++) = v.normalized();
  }
  return c;
}

double BoundaryChart::psi1(const Eigen::VectorXd& x) const { return normal.dot(x - point); }

Eigen::VectorXd BoundaryChart::psi_prime(const Eigen::VectorXd& x) const {
  return tangents.transpose() * (x - point);
}

GeometryBounds radial_geometry_bounds(const RadialState& s) {
  GeometryBounds b;
  b.R_out = s.front_radius;
  b.r_in = 0.5 * s.front_radius;
  b.m = evaluate(s, b.r_in);
  return b;
}

double default_strip_width(const GeometryBounds& b) { return 0.5 * std::min(b.r_in, 0.5 * b.m); }

HodographStrip invert_profile(const RadialState& s, const GeometryBounds& bounds, double d, int samples) {
  validate(bounds);
  if (!(d > 0.0)) throw Error(ErrorKind::InvalidArgument, "strip width must be positive");
  if (!(d < std::min(bounds.r_in, 0.5 * bounds.m)))
    throw Error(ErrorKind::StripTooWide, "strip width must be below min(r_in, m/2)");
  if (samples < 3) throw Error(ErrorKind::InvalidArgument, "strip needs 3 samples");

  const int N = s.size();
  const double hr = s.spacing();
  const double slope_floor = bounds.m / (2.0 * bounds.R_out) - 5.0 * hr;
  std::vector<double> yv, rv;
  for (int i = N - 1; i >= 0; --i) {
    yv.push_back(s.heights[i]);
    rv.push_back(s.radius(i));
    if (s.heights[i] > d) break;
  }
  if (yv.back() <= d) throw Error(ErrorKind::NonMonotone, "profile never exceeds the strip width");
  for (std::size_t k = 1; k < yv.size(); ++k) {
    double slope = (yv[k] - yv[k - 1]) / (rv[k - 1] - rv[k]);
    if (!(yv[k] > yv[k - 1]) || slope < slope_floor)
      throw Error(ErrorKind::NonMonotone, "gradient degenerates inside the strip");
  }
  Pchip inv(yv, rv);
  HodographStrip out;
  out.d = d;
  const double dy = d / (samples - 1);
  for (int k = 0; k < samples; ++k) {
    double y = k * dy;
    out.y.push_back(y);
    out.h.push_back(inv(y));
    out.h_y.push_back(inv.derivative(y));
  }
  out.h_yy.resize(samples);
  for (int k = 0; k < samples; ++k) {
    int a = std::max(0, k - 1), b = std::min(samples - 1, k + 1);
    out.h_yy[k] = (out.h_y[b] - out.h_y[a]) / ((b - a) * dy);
  }
  return out;
}

double radial_strip_rhs(double h, double h_y, double h_yy, const PParams& params, int n) {
  if (!(h_y < 0.0)) throw Error(ErrorKind::WrongBranch, "strip graph must decrease (h_y < 0)");
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "strip radius must be positive");
  const double fr = 1.0 / h_y;
  const double frr = -h_yy / (h_y * h_y * h_y);
  const CoefficientEigenvalues ev = coefficient_eigenvalues(fr * fr, params);
  const double lap = ev.big * frr + (n - 1) / h * radial_flux(fr, params);
  return -h_y * lap;
}

double radial_front_velocity(const RadialState& s, const PParams& params, double front_slope) {
  const int N = s.size();
  const double delta = s.heights[N - 2];
  if (!(delta > 0.0)) throw Error(ErrorKind::NonMonotone, "profile is flat next to the front");
  const double R = s.front_radius;
  const double hy0 = -1.0 / front_slope;
  // Quadratic h(y) through (0, R) with slope hy0 passing through (delta, r_{N-2}).
  const double hyy = 2.0 * (s.radius(N - 2) - R - hy0 * delta) / (delta * delta);
  return radial_strip_rhs(R, hy0, hyy, params, params.n);
}

namespace {

double tangential_M(const Eigen::VectorXd& gt) { return 1.0 + gt.squaredNorm(); }

void check_gradient_bound(double g1, double M) {
  if (!(g1 > 0.0) || g1 * g1 < M * (1.0 - 1e-12))
    throw Error(ErrorKind::GradientBoundViolated, "need g1^2 >= 1 + sum g_i^2");
}

}  // namespace

StripCoefficients planar_strip_coefficients(double g1, const Eigen::VectorXd& gt, const PParams& params) {
  const double M = tangential_M(gt);
  check_gradient_bound(g1, M);
  const auto n = gt.size() + 1;
  const double q = params.q(), eps = params.epsilon;
  const double g2q = std::pow(g1, 2.0 * q);
  const double c1 = fast_pow(M + eps, q - 1.0) / g2q;
  const double c2 = 2.0 * (q - 1.0) * fast_pow(M + eps, q - 2.0) / g2q;

  // First bracket: M g11 + g1^2 sum g_ii - 2 g1 sum g_i g_1i.
  Eigen::MatrixXd Q1 = Eigen::MatrixXd::Zero(n, n);
  Q1(0, 0) = M;
  for (Eigen::Index i = 1; i < n; ++i) {
    Q1(i, i) = g1 * g1;
    Q1(0, i) = Q1(i, 0) = -g1 * gt(i - 1);
  }
  // Second bracket: g11 M^2 - 2 g1 M sum g_i g_1i + g1^2 sum g_i g_j g_ij.
  Eigen::MatrixXd Q2 = Eigen::MatrixXd::Zero(n, n);
  Q2(0, 0) = M * M;
  for (Eigen::Index i = 1; i < n; ++i) {
    Q2(0, i) = Q2(i, 0) = -g1 * M * gt(i - 1);
    for (Eigen::Index j = 1; j < n; ++j) Q2(i, j) = g1 * g1 * gt(i - 1) * gt(j - 1);
  }
  StripCoefficients out;
  out.b = c1 * Q1 + c2 * Q2;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) out.b(j, i) = out.b(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.b, Eigen::EigenvaluesOnly);
  out.lambda_min = es.eigenvalues().minCoeff();
  out.lambda_max = es.eigenvalues().maxCoeff();
  return out;
}

double structural_form_bound(double g1, const Eigen::VectorXd& gt, const Eigen::VectorXd& xi, int n) {
  if (xi.size() != n || gt.size() != n - 1)
    throw Error(ErrorKind::InvalidArgument, "structural form needs xi of length n and n-1 tangential slopes");
  if (std::abs(xi.norm() - 1.0) > 1e-9) throw Error(ErrorKind::InvalidArgument, "xi must be a unit vector");
  const double M = tangential_M(gt);
  check_gradient_bound(g1, M);
  double cross_sum = 0.0, tang = 0.0;
  for (int i = 1; i < n; ++i) {
    cross_sum += gt(i - 1) * xi(0) * xi(i);
    tang += xi(i) * xi(i);
  }
  return M * xi(0) * xi(0) - 2.0 * g1 * cross_sum + g1 * g1 * tang;
}

}  // namespace plap
