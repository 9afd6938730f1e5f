#include "plap/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "plap/error.hpp"

namespace plap {

namespace {

double end_slope(double h0, double h1, double m0, double m1) {
  double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
  if (std::signbit(d) != std::signbit(m0) || d == 0.0) return 0.0;
  if (std::signbit(m0) != std::signbit(m1) && std::abs(d) > std::abs(3.0 * m0)) return 3.0 * m0;
  return d;
}

}  // namespace

Pchip::Pchip(std::vector<double> x, std::vector<double> y, std::optional<double> left_slope)
    : x_(std::move(x)), y_(std::move(y)) {
  const int n = static_cast<int>(x_.size());
  if (n < 2 || y_.size() != x_.size())
    throw Error(ErrorKind::InvalidArgument, "pchip needs at least two matching points");
  std::vector<double> h(n - 1), m(n - 1);
  for (int k = 0; k < n - 1; ++k) {
    h[k] = x_[k + 1] - x_[k];
    if (!(h[k] > 0.0)) throw Error(ErrorKind::InvalidArgument, "pchip abscissae not increasing");
    m[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = m[0];
  } else {
    for (int k = 1; k < n - 1; ++k) {
      if (m[k - 1] * m[k] <= 0.0) {
        d_[k] = 0.0;
      } else {
        double w1 = 2.0 * h[k] + h[k - 1];
        double w2 = h[k] + 2.0 * h[k - 1];
        d_[k] = (w1 + w2) / (w1 / m[k - 1] + w2 / m[k]);
      }
    }
    d_[0] = end_slope(h[0], h[1], m[0], m[1]);
    d_[n - 1] = end_slope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
  }
  if (left_slope) d_[0] = *left_slope;
}

int Pchip::locate(double t) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  int k = static_cast<int>(it - x_.begin()) - 1;
  return std::clamp(k, 0, static_cast<int>(x_.size()) - 2);
}

double Pchip::eval_in(int k, double t) const {
  double h = x_[k + 1] - x_[k];
  double s = (t - x_[k]) / h;
  double s2 = s * s, s3 = s2 * s;
  double h00 = 2 * s3 - 3 * s2 + 1;
  double h10 = s3 - 2 * s2 + s;
  double h01 = -2 * s3 + 3 * s2;
  double h11 = s3 - s2;
  return h00 * y_[k] + h10 * h * d_[k] + h01 * y_[k + 1] + h11 * h * d_[k + 1];
}

double Pchip::operator()(double t) const {
  if (t <= x_.front()) return y_.front();
  if (t >= x_.back()) return y_.back();
  return eval_in(locate(t), t);
}

double Pchip::derivative(double t) const {
  t = std::clamp(t, x_.front(), x_.back());
  int k = locate(t);
  double h = x_[k + 1] - x_[k];
  double s = (t - x_[k]) / h;
  double s2 = s * s;
  double dh00 = (6 * s2 - 6 * s) / h;
  double dh10 = 3 * s2 - 4 * s + 1;
  double dh01 = (-6 * s2 + 6 * s) / h;
  double dh11 = 3 * s2 - 2 * s;
  return dh00 * y_[k] + dh10 * d_[k] + dh01 * y_[k + 1] + dh11 * d_[k + 1];
}

void Pchip::eval_sorted(const std::vector<double>& t, std::vector<double>& out) const {
  out.resize(t.size());
  const int last = static_cast<int>(x_.size()) - 2;
  int k = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double ti = t[i];
    if (ti <= x_.front()) {
      out[i] = y_.front();
      continue;
    }
    if (ti >= x_.back()) {
      out[i] = y_.back();
      continue;
    }
    while (k < last && x_[k + 1] <= ti) ++k;
    out[i] = eval_in(k, ti);
  }
}

void pchip_remap_uniform(const std::vector<double>& y, double h_old, double h_new, std::vector<double>& out) {
  const int n = static_cast<int>(y.size());
  out.resize(n);
  const double inv_h = 1.0 / h_old;
  auto secant = [&](int k) { return (y[k + 1] - y[k]) * inv_h; };
  auto slope = [&](int k) {
    if (k == 0) return 0.0;
    if (k == n - 1) return n == 2 ? secant(0) : end_slope(h_old, h_old, secant(n - 2), secant(n - 3));
    double m0 = secant(k - 1), m1 = secant(k);
    if (m0 * m1 <= 0.0) return 0.0;
    // Equal weights on a uniform grid: the harmonic mean of the secants.
    return 2.0 * m0 * m1 / (m0 + m1);
  };
  int k = -1;
  double dk = 0.0, dk1 = 0.0;
  const double xmax = (n - 1) * h_old;
  for (int j = 0; j < n; ++j) {
    double t = j * h_new;
    if (t <= 0.0) {
      out[j] = y[0];
      continue;
    }
    if (t >= xmax) {
      out[j] = y[n - 1];
      continue;
    }
    int kk = std::min(static_cast<int>(t / h_old), n - 2);
    while (kk > 0 && kk * h_old > t) --kk;
    while (kk < n - 2 && (kk + 1) * h_old <= t) ++kk;
    if (kk != k) {
      dk = kk == k + 1 ? dk1 : slope(kk);
      dk1 = slope(kk + 1);
      k = kk;
    }
    double s = (t - k * h_old) * inv_h;
    double s2 = s * s, s3 = s2 * s;
    out[j] = (2 * s3 - 3 * s2 + 1) * y[k] + (s3 - 2 * s2 + s) * h_old * dk + (-2 * s3 + 3 * s2) * y[k + 1] +
             (s3 - s2) * h_old * dk1;
  }
}

}  // namespace plap
