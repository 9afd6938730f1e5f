#include "plap/operator.hpp"

#include <algorithm>
#include <cmath>

namespace plap {

double fast_pow(double x, double e) {
  if (e == 0.0) return 1.0;
  if (e == 1.0) return x;
  if (e == 0.5) return std::sqrt(x);
  if (e == 2.0) return x * x;
  if (e == 1.5) return x * std::sqrt(x);
  if (e == -0.5) return 1.0 / std::sqrt(x);
  if (e == -1.0) return 1.0 / x;
  return std::pow(x, e);
}

double flux_factor(double s, const PParams& params) {
  return fast_pow(s + params.epsilon, params.q() - 1.0);
}

double radial_flux(double g, const PParams& params) { return flux_factor(g * g, params) * g; }

CoefficientEigenvalues coefficient_eigenvalues(double s, const PParams& params) {
  const double q = params.q(), eps = params.epsilon, base = s + eps;
  CoefficientEigenvalues out;
  out.alpha = fast_pow(base, q - 1.0);
  out.big = base == 0.0 ? 0.0 : fast_pow(base, q - 2.0) * ((params.p - 1.0) * s + eps);
  return out;
}

namespace {

void check_degenerate(const Eigen::VectorXd& grad, const PParams& params) {
  if (params.epsilon == 0.0 && grad.squaredNorm() == 0.0)
    throw Error(ErrorKind::DegeneratePoint, "operator undefined at zero gradient when epsilon = 0");
}

}  // namespace

CoefficientMatrix coefficient_matrix(const Eigen::VectorXd& grad, const PParams& params) {
  check_degenerate(grad, params);
  const double q = params.q(), s = grad.squaredNorm(), base = s + params.epsilon;
  const double alpha = fast_pow(base, q - 1.0);
  const double beta = 2.0 * (q - 1.0) * fast_pow(base, q - 2.0);
  const auto n = grad.size();
  CoefficientMatrix out;
  out.a.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      out.a(i, j) = out.a(j, i) = (i == j ? alpha : 0.0) + beta * (grad[i] * grad[j]);
  return out;
}

double p_laplacian_nondiv(const Eigen::VectorXd& grad, const Eigen::MatrixXd& hessian,
                          const PParams& params) {
  check_degenerate(grad, params);
  const double q = params.q(), s = grad.squaredNorm(), base = s + params.epsilon;
  const double alpha = fast_pow(base, q - 1.0);
  const double beta = 2.0 * (q - 1.0) * fast_pow(base, q - 2.0);
  return alpha * hessian.trace() + beta * grad.dot(hessian * grad);
}

double p_laplacian_normal_form(const Eigen::VectorXd& grad, const Eigen::MatrixXd& hessian,
                               const PParams& params) {
  const double s = grad.squaredNorm();
  if (s == 0.0) throw Error(ErrorKind::DegeneratePoint, "normal direction undefined at zero gradient");
  const double f_nn = grad.dot(hessian * grad) / s;
  return std::pow(s, 0.5 * (params.p - 2.0)) * (hessian.trace() + (params.p - 2.0) * f_nn);
}

int box_stencil_size(int n) {
  int s = 1;
  for (int k = 0; k < n; ++k) s *= 3;
  return s;
}

int box_stencil_index(std::span<const int> offsets) {
  int idx = 0, mul = 1;
  for (int o : offsets) {
    idx += (o + 1) * mul;
    mul *= 3;
  }
  return idx;
}

double p_laplacian_div_fd(std::span<const double> stencil, double h, const PParams& params) {
  const int n = params.n;
  if (n < 1 || n > 3) throw Error(ErrorKind::InvalidArgument, "box stencil supports n = 1, 2, 3");
  if (static_cast<int>(stencil.size()) != box_stencil_size(n))
    throw Error(ErrorKind::IncompleteStencil, "stencil size does not match dimension");
  for (double v : stencil)
    if (std::isnan(v)) throw Error(ErrorKind::IncompleteStencil, "stencil has a missing sample");

  int off[3] = {0, 0, 0};
  auto at = [&](const int* o) { return stencil[box_stencil_index(std::span<const int>(o, n))]; };
  const double f0 = at(off);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    double F[2];
    for (int side = 0; side < 2; ++side) {
      const int sg = side == 0 ? 1 : -1;
      int nb[3] = {0, 0, 0};
      nb[k] = sg;
      const double gk = sg * (at(nb) - f0) / h;
      double s = gk * gk;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        int a[3] = {0, 0, 0}, b[3] = {0, 0, 0}, c[3] = {0, 0, 0}, d[3] = {0, 0, 0};
        a[j] = 1;
        b[j] = -1;
        c[k] = sg;
        c[j] = 1;
        d[k] = sg;
        d[j] = -1;
        const double gj = ((at(a) - at(b)) + (at(c) - at(d))) / (4.0 * h);
        s += gj * gj;
      }
      F[side] = flux_factor(s, params) * gk;
    }
    total += (F[0] - F[1]) / h;
  }
  return total;
}

namespace {

double bump(double z) {
  if (std::abs(z) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - z * z));
}

double bump_deriv(double z) {
  if (std::abs(z) >= 1.0) return 0.0;
  const double w = 1.0 - z * z;
  return bump(z) * (-2.0 * z / (w * w));
}

}  // namespace

double TestFunction::value(double x, double t) const {
  if (amplitude == 0.0) return 0.0;
  double tau = t_halfwidth > 0.0 ? bump((t - t_center) / t_halfwidth) : 1.0;
  return amplitude * bump((x - center) / radius) * tau;
}

double TestFunction::dx(double x, double t) const {
  if (amplitude == 0.0) return 0.0;
  double tau = t_halfwidth > 0.0 ? bump((t - t_center) / t_halfwidth) : 1.0;
  return amplitude * bump_deriv((x - center) / radius) / radius * tau;
}

double TestFunction::dt(double x, double t) const {
  if (amplitude == 0.0 || t_halfwidth <= 0.0) return 0.0;
  return amplitude * bump((x - center) / radius) * bump_deriv((t - t_center) / t_halfwidth) / t_halfwidth;
}

ProfileTrajectory to_profiles(const RadialTrajectory& traj, const PParams& params) {
  ProfileTrajectory out;
  out.params = params;
  out.radial_dim = params.n;
  for (const auto& s : traj.snapshots) {
    ProfileSnapshot p;
    p.t = s.t;
    p.f = s.state.heights;
    p.x.resize(p.f.size());
    for (int i = 0; i < s.state.size(); ++i) p.x[i] = s.state.radius(i);
    out.snapshots.push_back(std::move(p));
  }
  return out;
}

namespace {

struct SnapIntegrals {
  double f_theta_t = 0.0;  // integral of f * theta_t
  double flux_theta_x = 0.0;  // integral of flux * theta_x
  double f_theta = 0.0;  // integral of f * theta
};

void check_support(const ProfileTrajectory& tr, const ProfileSnapshot& s, const TestFunction& th) {
  const double lo = th.support_lo(), hi = th.support_hi();
  if (tr.radial_dim > 0) {
    if (hi >= s.x.back()) throw Error(ErrorKind::SupportViolation, "test function reaches the front");
  } else {
    if (lo <= s.x.front() || hi >= s.x.back())
      throw Error(ErrorKind::SupportViolation, "test function leaves the profile range");
  }
  for (std::size_t k = 0; k < s.x.size(); ++k)
    if (s.x[k] >= lo && s.x[k] <= hi && !(s.f[k] > 0.0))
      throw Error(ErrorKind::SupportViolation, "test function support meets the zero set");
}

SnapIntegrals integrate(const ProfileTrajectory& tr, const ProfileSnapshot& s, const TestFunction& th) {
  const auto& x = s.x;
  const auto& f = s.f;
  const std::size_t N = x.size();
  std::vector<double> df(N, 0.0);
  for (std::size_t k = 0; k < N; ++k) {
    if (k == 0) {
      df[k] = (tr.radial_dim > 0 && x[0] == 0.0) ? 0.0 : (f[1] - f[0]) / (x[1] - x[0]);
    } else if (k + 1 == N) {
      df[k] = (f[k] - f[k - 1]) / (x[k] - x[k - 1]);
    } else {
      double hm = x[k] - x[k - 1], hp = x[k + 1] - x[k];
      df[k] = (hm * hm * (f[k + 1] - f[k]) + hp * hp * (f[k] - f[k - 1])) / (hm * hp * (hm + hp));
    }
  }
  SnapIntegrals out;
  double prev[3] = {0, 0, 0};
  for (std::size_t k = 0; k < N; ++k) {
    double w = tr.radial_dim > 1 ? std::pow(std::abs(x[k]), tr.radial_dim - 1) : 1.0;
    double cur[3] = {f[k] * th.dt(x[k], s.t) * w,
                     radial_flux(df[k], tr.params) * th.dx(x[k], s.t) * w,
                     f[k] * th.value(x[k], s.t) * w};
    if (k > 0) {
      double hk = x[k] - x[k - 1];
      out.f_theta_t += 0.5 * hk * (prev[0] + cur[0]);
      out.flux_theta_x += 0.5 * hk * (prev[1] + cur[1]);
      out.f_theta += 0.5 * hk * (prev[2] + cur[2]);
    }
    std::copy(cur, cur + 3, prev);
  }
  return out;
}

}  // namespace

double weak_residual(const ProfileTrajectory& traj, const TestFunction& theta, double t1, double t2) {
  if (traj.snapshots.empty()) throw Error(ErrorKind::InvalidArgument, "empty trajectory");
  if (theta.amplitude == 0.0) return 0.0;
  const auto& S = traj.snapshots;
  if (!(t1 > 0.0) || !(t2 > t1) || t2 > S.back().t || t1 < S.front().t)
    throw Error(ErrorKind::InvalidArgument, "need 0 < t1 < t2 within the trajectory");
  if (traj.radial_dim > 0 && theta.support_lo() < 0.0 && theta.center != 0.0)
    throw Error(ErrorKind::InvalidArgument, "radial test function must be centered at the axis or avoid it");

  // Snapshots bracketing [t1, t2].
  std::size_t a = 0;
  while (a + 1 < S.size() && S[a + 1].t <= t1) ++a;
  std::size_t b = a;
  while (b + 1 < S.size() && S[b].t < t2) ++b;

  std::vector<double> ts;
  std::vector<SnapIntegrals> vals;
  std::vector<SnapIntegrals> cache(b - a + 1);
  for (std::size_t k = a; k <= b; ++k) {
    check_support(traj, S[k], theta);
    cache[k - a] = integrate(traj, S[k], theta);
  }
  auto interp = [&](double t) {
    std::size_t k = a;
    while (k + 1 <= b && S[k + 1].t < t) ++k;
    if (k == b || S[k].t == t) return cache[k - a];
    double w = (t - S[k].t) / (S[k + 1].t - S[k].t);
    const auto& L = cache[k - a];
    const auto& R = cache[k + 1 - a];
    SnapIntegrals out;
    out.f_theta_t = (1 - w) * L.f_theta_t + w * R.f_theta_t;
    out.flux_theta_x = (1 - w) * L.flux_theta_x + w * R.flux_theta_x;
    out.f_theta = (1 - w) * L.f_theta + w * R.f_theta;
    return out;
  };

  ts.push_back(t1);
  vals.push_back(interp(t1));
  for (std::size_t k = a; k <= b; ++k) {
    if (S[k].t > t1 && S[k].t < t2) {
      ts.push_back(S[k].t);
      vals.push_back(cache[k - a]);
    }
  }
  ts.push_back(t2);
  vals.push_back(interp(t2));

  double lhs_time = 0.0, rhs = 0.0;
  for (std::size_t k = 1; k < ts.size(); ++k) {
    double dt = ts[k] - ts[k - 1];
    lhs_time += 0.5 * dt * (vals[k].f_theta_t + vals[k - 1].f_theta_t);
    rhs += 0.5 * dt * (vals[k].flux_theta_x + vals[k - 1].flux_theta_x);
  }
  double lhs = lhs_time - (vals.back().f_theta - vals.front().f_theta);
  return std::abs(lhs - rhs);
}

}  // namespace plap
