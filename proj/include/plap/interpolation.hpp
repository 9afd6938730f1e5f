#pragma once

#include <optional>
#include <vector>

namespace plap {

// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes).
// Keeps monotone data monotone and never overshoots the data range.
class Pchip {
 public:
  Pchip() = default;
  // x strictly increasing, at least two points. left_slope fixes the
  // derivative at x.front() (used for the symmetry condition at the axis).
  Pchip(std::vector<double> x, std::vector<double> y,
        std::optional<double> left_slope = std::nullopt);

  double operator()(double t) const;
  double derivative(double t) const;
  // Evaluate at increasing abscissae in one sweep. Points outside the data
  // range are clamped to the end values.
  void eval_sorted(const std::vector<double>& t, std::vector<double>& out) const;

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  const std::vector<double>& slopes() const { return d_; }

 private:
  int locate(double t) const;
  double eval_in(int k, double t) const;

  std::vector<double> x_, y_, d_;
};

// Same interpolant for data on the uniform grid x_k = k * h_old with slope 0 at
// x = 0, evaluated at x_j = j * h_new. Avoids building the full object.
void pchip_remap_uniform(const std::vector<double>& y, double h_old, double h_new, std::vector<double>& out);

}  // namespace plap
