#include "plap/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace plap::poly {

namespace {

int wrap(int k, int M) { return ((k % M) + M) % M; }

}  // namespace

double signed_area(const std::vector<Vec2>& P) {
  const int M = static_cast<int>(P.size());
  double a = 0.0;
  for (int k = 0; k < M; ++k) a += cross(P[k], P[wrap(k + 1, M)]);
  return 0.5 * a;
}

double perimeter(const std::vector<Vec2>& P) {
  const int M = static_cast<int>(P.size());
  double L = 0.0;
  for (int k = 0; k < M; ++k) L += norm(P[wrap(k + 1, M)] - P[k]);
  return L;
}

std::vector<Vec2> orient_ccw(std::vector<Vec2> P) {
  if (signed_area(P) < 0.0) std::reverse(P.begin(), P.end());
  return P;
}

std::vector<double> turn_crosses(const std::vector<Vec2>& P) {
  const int M = static_cast<int>(P.size());
  std::vector<double> c(M);
  for (int k = 0; k < M; ++k) {
    Vec2 a = P[wrap(k - 1, M)], b = P[k], d = P[wrap(k + 1, M)];
    c[k] = cross(b - a, d - b);
  }
  return c;
}

bool is_convex(const std::vector<Vec2>& P, double tol) {
  if (P.size() < 3) return false;
  for (double c : turn_crosses(P))
    if (c < -tol) return false;
  return signed_area(P) > 0.0;
}

bool is_strictly_convex(const std::vector<Vec2>& P) {
  if (P.size() < 3) return false;
  for (double c : turn_crosses(P))
    if (!(c > 0.0)) return false;
  return true;
}

bool inside(const std::vector<Vec2>& P, Vec2 x) {
  const int M = static_cast<int>(P.size());
  for (int k = 0; k < M; ++k) {
    Vec2 a = P[k], b = P[wrap(k + 1, M)];
    if (!(cross(b - a, x - a) > 0.0)) return false;
  }
  return true;
}

double inner_distance(const std::vector<Vec2>& P, Vec2 x) {
  const int M = static_cast<int>(P.size());
  double d = INFINITY;
  for (int k = 0; k < M; ++k) {
    Vec2 a = P[k], b = P[wrap(k + 1, M)];
    Vec2 e = b - a;
    double len = norm(e);
    if (len == 0.0) continue;
    d = std::min(d, cross(e, x - a) / len);
  }
  return d;
}

std::vector<Vec2> place_on_polygon(const std::vector<Vec2>& P, int M) {
  const int V = static_cast<int>(P.size());
  if (M < V) throw Error(ErrorKind::InvalidArgument, "fewer markers than polygon vertices");
  std::vector<double> len(V);
  for (int e = 0; e < V; ++e) len[e] = norm(P[wrap(e + 1, V)] - P[e]);
  double L = std::accumulate(len.begin(), len.end(), 0.0);
  std::vector<int> cnt(V);
  std::vector<double> frac(V);
  int used = 0;
  for (int e = 0; e < V; ++e) {
    double ideal = M * len[e] / L;
    cnt[e] = std::max(1, static_cast<int>(std::floor(ideal)));
    frac[e] = ideal - cnt[e];
    used += cnt[e];
  }
  while (used < M) {
    int e = static_cast<int>(std::max_element(frac.begin(), frac.end()) - frac.begin());
    ++cnt[e];
    frac[e] -= 1.0;
    ++used;
  }
  while (used > M) {
    int e = static_cast<int>(std::max_element(cnt.begin(), cnt.end()) - cnt.begin());
    --cnt[e];
    --used;
  }
  std::vector<Vec2> out;
  out.reserve(M);
  for (int e = 0; e < V; ++e) {
    Vec2 a = P[e], b = P[wrap(e + 1, V)];
    for (int j = 0; j < cnt[e]; ++j) {
      double s = static_cast<double>(j) / cnt[e];
      out.push_back(a + s * (b - a));
    }
  }
  return out;
}

std::vector<Vec2> place_on_circle(double R, int M) {
  std::vector<Vec2> out(M);
  for (int k = 0; k < M; ++k) {
    double th = 2.0 * std::numbers::pi * k / M;
    out[k] = {R * std::cos(th), R * std::sin(th)};
  }
  return out;
}

std::vector<Vec2> resample_uniform(const std::vector<Vec2>& P, int count) {
  const int M = static_cast<int>(P.size());
  const int Mo = count > 0 ? count : M;
  std::vector<double> cum(M + 1, 0.0);
  for (int k = 0; k < M; ++k) cum[k + 1] = cum[k] + norm(P[wrap(k + 1, M)] - P[k]);
  const double L = cum[M];
  std::vector<Vec2> out(Mo);
  out[0] = P[0];
  int k = 0;
  for (int j = 1; j < Mo; ++j) {
    double s = L * j / Mo;
    while (k < M - 1 && cum[k + 1] <= s) ++k;
    double seg = cum[k + 1] - cum[k];
    double w = seg > 0.0 ? (s - cum[k]) / seg : 0.0;
    w = std::clamp(w, 0.0, 1.0);
    Vec2 a = P[k], b = P[wrap(k + 1, M)];
    out[j] = a + w * (b - a);
  }
  return out;
}

std::vector<Vec2> resample_spline(const std::vector<Vec2>& P, int count) {
  const int M = static_cast<int>(P.size());
  const int Mo = count > 0 ? count : M;
  constexpr int kSub = 8;
  // Arclength from kSub chords per segment. Points land on the spline exactly;
  // only their spacing carries the quadrature error.
  std::vector<double> cum(static_cast<std::size_t>(M) * kSub + 1, 0.0);
  for (int k = 0; k < M; ++k) {
    Vec2 prev = P[k];
    for (int i = 1; i <= kSub; ++i) {
      Vec2 cur = i == kSub ? P[wrap(k + 1, M)] : spline_point(P, k, static_cast<double>(i) / kSub);
      cum[k * kSub + i] = cum[k * kSub + i - 1] + norm(cur - prev);
      prev = cur;
    }
  }
  const double L = cum.back();
  std::vector<Vec2> out(Mo);
  out[0] = P[0];
  int c = 0;
  for (int j = 1; j < Mo; ++j) {
    double s = L * j / Mo;
    while (c < M * kSub - 1 && cum[c + 1] <= s) ++c;
    double seg = cum[c + 1] - cum[c];
    double w = seg > 0.0 ? std::clamp((s - cum[c]) / seg, 0.0, 1.0) : 0.0;
    out[j] = spline_point(P, c / kSub, ((c % kSub) + w) / kSub);
  }
  return out;
}

Vec2 vertex_normal(const std::vector<Vec2>& P, int k) {
  const int M = static_cast<int>(P.size());
  Vec2 e0 = P[k] - P[wrap(k - 1, M)];
  Vec2 e1 = P[wrap(k + 1, M)] - P[k];
  double l0 = norm(e0), l1 = norm(e1);
  Vec2 n0{-e0.y / l0, e0.x / l0};
  Vec2 n1{-e1.y / l1, e1.x / l1};
  Vec2 s = n0 + n1;
  double ls = norm(s);
  if (ls == 0.0) return n1;
  return (1.0 / ls) * s;
}

double menger_curvature(Vec2 a, Vec2 b, Vec2 c) {
  double den = norm(b - a) * norm(c - b) * norm(c - a);
  if (den == 0.0) return 0.0;
  return 2.0 * cross(b - a, c - b) / den;
}

bool circumcircle(Vec2 a, Vec2 b, Vec2 c, Vec2& center, double& radius) {
  Vec2 u = b - a, v = c - a;
  double d = 2.0 * cross(u, v);
  double scale = dot(u, u) * dot(v, v);
  if (d == 0.0 || std::abs(d) * std::abs(d) < 1e-24 * scale) return false;
  double uu = dot(u, u), vv = dot(v, v);
  Vec2 off{(v.y * uu - u.y * vv) / d, (u.x * vv - v.x * uu) / d};
  center = a + off;
  radius = norm(off);
  return true;
}

Vec2 spline_point(const std::vector<Vec2>& P, int k, double u) {
  const int M = static_cast<int>(P.size());
  Vec2 p0 = P[wrap(k - 1, M)], p1 = P[wrap(k, M)], p2 = P[wrap(k + 1, M)], p3 = P[wrap(k + 2, M)];
  double u2 = u * u, u3 = u2 * u;
  Vec2 r;
  for (int i = 0; i < 2; ++i) {
    double c0 = 2.0 * p1[i];
    double c1 = p2[i] - p0[i];
    double c2 = 2.0 * p0[i] - 5.0 * p1[i] + 4.0 * p2[i] - p3[i];
    double c3 = 3.0 * p1[i] - p0[i] - 3.0 * p2[i] + p3[i];
    r[i] = 0.5 * (c0 + c1 * u + c2 * u2 + c3 * u3);
  }
  return r;
}

Vec2 spline_tangent(const std::vector<Vec2>& P, int k, double u) {
  const int M = static_cast<int>(P.size());
  Vec2 p0 = P[wrap(k - 1, M)], p1 = P[wrap(k, M)], p2 = P[wrap(k + 1, M)], p3 = P[wrap(k + 2, M)];
  double u2 = u * u;
  Vec2 r;
  for (int i = 0; i < 2; ++i) {
    double c1 = p2[i] - p0[i];
    double c2 = 2.0 * p0[i] - 5.0 * p1[i] + 4.0 * p2[i] - p3[i];
    double c3 = 3.0 * p1[i] - p0[i] - 3.0 * p2[i] + p3[i];
    r[i] = 0.5 * (c1 + 2.0 * c2 * u + 3.0 * c3 * u2);
  }
  return r;
}

bool line_span(const std::vector<Vec2>& P, int axis, double c, Span& span) {
  const int M = static_cast<int>(P.size());
  const int o = 1 - axis;
  bool found = false;
  span.lo = INFINITY;
  span.hi = -INFINITY;
  for (int k = 0; k < M; ++k) {
    Vec2 a = P[k], b = P[wrap(k + 1, M)];
    double da = a[axis] - c, db = b[axis] - c;
    if (da * db > 0.0) continue;
    if (da == 0.0 && db == 0.0) continue;
    double val;
    if (da == 0.0) {
      val = a[o];
    } else if (db == 0.0) {
      val = b[o];
    } else {
      val = a[o] + (c - a[axis]) * (b[o] - a[o]) / (b[axis] - a[axis]);
    }
    found = true;
    if (val < span.lo) {
      span.lo = val;
      span.edge_lo = k;
    }
    if (val > span.hi) {
      span.hi = val;
      span.edge_hi = k;
    }
  }
  return found && span.hi > span.lo;
}

double spline_crossing(const std::vector<Vec2>& P, int k, int axis, double c, double chord_value) {
  const int M = static_cast<int>(P.size());
  const int o = 1 - axis;
  Vec2 a = P[wrap(k, M)], b = P[wrap(k + 1, M)];
  double ga = a[axis] - c, gb = b[axis] - c;
  if (ga == 0.0) return a[o];
  if (gb == 0.0) return b[o];
  if (ga * gb > 0.0) return chord_value;
  double lo = 0.0, hi = 1.0;
  double u = ga / (ga - gb);
  // Bracketed Newton on g(u) = spline(u)[axis] - c.
  for (int it = 0; it < 60; ++it) {
    double g = spline_point(P, k, u)[axis] - c;
    if (g == 0.0) break;
    if ((g > 0.0) == (ga > 0.0)) lo = u; else hi = u;
    double dg = spline_tangent(P, k, u)[axis];
    double un = dg != 0.0 ? u - g / dg : 0.5 * (lo + hi);
    if (!(un > lo && un < hi)) un = 0.5 * (lo + hi);
    if (std::abs(un - u) <= 1e-15) {
      u = un;
      break;
    }
    u = un;
  }
  double g = spline_point(P, k, u)[axis] - c;
  if (std::abs(g) > 1e-10 * (std::abs(ga) + std::abs(gb))) return chord_value;
  return spline_point(P, k, u)[o];
}

GridCrossings grid_crossings(const std::vector<Vec2>& P, const GridField2D& g) {
  GridCrossings c;
  auto fill = [&](int axis, int n, auto coord, std::vector<std::uint8_t>& ok, std::vector<double>& lo,
                  std::vector<double>& hi) {
    ok.assign(n, 0);
    lo.assign(n, 0.0);
    hi.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
      const double v = coord(k);
      Span sp;
      if (!line_span(P, axis, v, sp)) continue;
      lo[k] = spline_crossing(P, sp.edge_lo, axis, v, sp.lo);
      hi[k] = spline_crossing(P, sp.edge_hi, axis, v, sp.hi);
      ok[k] = hi[k] > lo[k];
    }
  };
  fill(1, g.ny, [&](int j) { return g.y(j); }, c.row_ok, c.row_lo, c.row_hi);
  fill(0, g.nx, [&](int i) { return g.x(i); }, c.col_ok, c.col_lo, c.col_hi);
  return c;
}

std::vector<std::uint8_t> grid_inside(const GridCrossings& c, const GridField2D& g) {
  std::vector<std::uint8_t> in(static_cast<std::size_t>(g.nx) * g.ny, 0);
  for (int j = 0; j < g.ny; ++j) {
    if (!c.row_ok[j]) continue;
    const double y = g.y(j);
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x(i);
      in[static_cast<std::size_t>(j) * g.nx + i] = c.col_ok[i] && x > c.row_lo[j] && x < c.row_hi[j] &&
                                                   y > c.col_lo[i] && y < c.col_hi[i];
    }
  }
  return in;
}

}  // namespace plap::poly
