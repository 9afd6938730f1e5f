#include "plap/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "plap/interpolation.hpp"
#include "plap/polygon.hpp"

namespace plap {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonConcaveData: return "NonConcaveData";
    case ErrorKind::BadRadius: return "BadRadius";
    case ErrorKind::NonConvexPolygon: return "NonConvexPolygon";
    case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::IncompleteStencil: return "IncompleteStencil";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::NonMonotone: return "NonMonotone";
    case ErrorKind::StripTooWide: return "StripTooWide";
    case ErrorKind::WrongBranch: return "WrongBranch";
    case ErrorKind::GradientBoundViolated: return "GradientBoundViolated";
    case ErrorKind::CflViolation: return "CflViolation";
    case ErrorKind::NegativeHeight: return "NegativeHeight";
    case ErrorKind::DegenerateFront: return "DegenerateFront";
    case ErrorKind::StencilFailure: return "StencilFailure";
    case ErrorKind::ConvexityLost: return "ConvexityLost";
    case ErrorKind::NotStrictlyNegative: return "NotStrictlyNegative";
    case ErrorKind::InitialNestingViolated: return "InitialNestingViolated";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& msg, std::optional<double> t) {
  std::ostringstream os;
  os << kind_name(kind) << ": " << msg;
  if (t) os << " (t=" << *t << ")";
  return os.str();
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& msg, std::optional<double> time)
    : std::runtime_error(compose(kind, msg, time)), kind_(kind), detail_(msg), time_(time) {}

const char* status_name(RunStatus s) {
  return s == RunStatus::Extinct ? "Extinct" : "TimeCapReached";
}

const char* initial_kind_name(InitialKind k) {
  switch (k) {
    case InitialKind::ParabolicCap: return "parabolic_cap";
    case InitialKind::Cone: return "cone";
    case InitialKind::Table: return "table";
    case InitialKind::DiskCap: return "disk_cap";
    case InitialKind::PolygonCap: return "polygon_cap";
  }
  return "unknown";
}

void StepStats::merge(const StepStats& o) {
  steps += o.steps;
  max_increase = std::max(max_increase, o.max_increase);
  max_front_advance = std::max(max_front_advance, o.max_front_advance);
  min_nondegeneracy_margin = std::min(min_nondegeneracy_margin, o.min_nondegeneracy_margin);
  min_clipped = std::min(min_clipped, o.min_clipped);
  min_dt = std::min(min_dt, o.min_dt);
  max_dt = std::max(max_dt, o.max_dt);
  thin_strip_steps += o.thin_strip_steps;
}

void validate(const PParams& params) {
  if (!(params.p > 2.0) || !std::isfinite(params.p))
    throw Error(ErrorKind::RangeError, "p must be finite and > 2");
  if (!(params.epsilon >= 0.0) || !std::isfinite(params.epsilon))
    throw Error(ErrorKind::RangeError, "epsilon must be finite and >= 0");
  if (params.n < 1) throw Error(ErrorKind::RangeError, "dimension n must be >= 1");
}

PParams make_params(double p, double epsilon, int n) {
  PParams out{p, epsilon, n};
  validate(out);
  return out;
}

void validate(const GeometryBounds& b) {
  if (!(b.r_in > 0.0) || !(b.R_out >= b.r_in) || !(b.m > 0.0))
    throw Error(ErrorKind::RangeError, "geometry bounds need 0 < r_in <= R_out and m > 0");
}

RadialState build_initial_radial(const InitialSpec& spec, const PParams& params, int N) {
  validate(params);
  if (N < 8) throw Error(ErrorKind::InvalidArgument, "radial grid needs at least 8 nodes");
  RadialState s;
  s.heights.assign(N, 0.0);
  const double k = spec.front_slope;
  if (!(k > 0.0)) throw Error(ErrorKind::RangeError, "front slope must be positive");

  if (spec.kind == InitialKind::ParabolicCap || spec.kind == InitialKind::Cone) {
    const double R0 = spec.R0;
    if (!(R0 > 0.0) || !std::isfinite(R0)) throw Error(ErrorKind::BadRadius, "R0 must be positive");
    s.front_radius = R0;
    for (int i = 0; i < N - 1; ++i) {
      double r = s.radius(i);
      s.heights[i] = spec.kind == InitialKind::ParabolicCap ? k * (R0 * R0 - r * r) / (2.0 * R0)
                                                            : k * (R0 - r);
    }
  } else if (spec.kind == InitialKind::Table) {
    const auto& T = spec.table;
    if (T.size() < 2) throw Error(ErrorKind::InvalidArgument, "profile table needs two rows");
    if (T.front().first != 0.0) throw Error(ErrorKind::InvalidArgument, "profile table must start at r = 0");
    const double R0 = T.back().first;
    if (!(R0 > 0.0) || !std::isfinite(R0)) throw Error(ErrorKind::BadRadius, "table radius must be positive");
    double fmax = 0.0;
    for (std::size_t i = 0; i < T.size(); ++i) {
      if (i > 0 && !(T[i].first > T[i - 1].first))
        throw Error(ErrorKind::InvalidArgument, "profile table radii must increase");
      if (!(T[i].second >= 0.0)) throw Error(ErrorKind::NonConcaveData, "profile table has a negative height");
      fmax = std::max(fmax, T[i].second);
    }
    const double tol = 1e-12 * std::max(1.0, fmax);
    if (std::abs(T.back().second) > tol)
      throw Error(ErrorKind::NonConcaveData, "profile table must vanish at its last radius");
    double prev = 0.0;
    for (std::size_t i = 0; i + 1 < T.size(); ++i) {
      double slope = (T[i + 1].second - T[i].second) / (T[i + 1].first - T[i].first);
      if (slope > tol / (T[i + 1].first - T[i].first))
        throw Error(ErrorKind::NonConcaveData, "radial profile must be non-increasing");
      if (i > 0 && slope > prev + tol / (T[i + 1].first - T[i].first))
        throw Error(ErrorKind::NonConcaveData, "profile table is not concave");
      prev = slope;
    }
    s.front_radius = R0;
    std::size_t seg = 0;
    for (int i = 0; i < N - 1; ++i) {
      double r = s.radius(i);
      while (seg + 2 < T.size() && T[seg + 1].first <= r) ++seg;
      double w = (r - T[seg].first) / (T[seg + 1].first - T[seg].first);
      s.heights[i] = (1.0 - w) * T[seg].second + w * T[seg + 1].second;
    }
  } else {
    throw Error(ErrorKind::InvalidArgument, "initial kind is not radial");
  }
  s.heights[N - 1] = 0.0;
  return s;
}

PlanarState build_initial_planar(const InitialSpec& spec, const PParams& params, double h,
                                 int marker_count) {
  validate(params);
  if (!(h > 0.0)) throw Error(ErrorKind::RangeError, "grid spacing must be positive");
  if (marker_count < 8) throw Error(ErrorKind::InvalidArgument, "need at least 8 markers");
  const double k = spec.front_slope;
  if (!(k > 0.0)) throw Error(ErrorKind::RangeError, "front slope must be positive");

  PlanarState s;
  std::vector<Vec2> shape;
  double width = 0.0;
  if (spec.kind == InitialKind::DiskCap) {
    if (!(spec.R0 > 0.0) || !std::isfinite(spec.R0)) throw Error(ErrorKind::BadRadius, "R0 must be positive");
    s.markers = poly::place_on_circle(spec.R0, marker_count);
    width = 2.0 * spec.R0;
  } else if (spec.kind == InitialKind::PolygonCap) {
    if (spec.polygon.size() < 3) throw Error(ErrorKind::NonConvexPolygon, "polygon needs 3 vertices");
    shape = poly::orient_ccw(spec.polygon);
    if (!poly::is_strictly_convex(shape)) throw Error(ErrorKind::NonConvexPolygon, "polygon is not strictly convex");
    s.markers = poly::place_on_polygon(shape, marker_count);
    // Minimal width over edge directions.
    width = INFINITY;
    const int V = static_cast<int>(shape.size());
    for (int e = 0; e < V; ++e) {
      Vec2 a = shape[e], b = shape[(e + 1) % V];
      Vec2 d = b - a;
      double len = norm(d), far = 0.0;
      for (const Vec2& v : shape) far = std::max(far, cross(d, v - a) / len);
      width = std::min(width, far);
    }
  } else {
    throw Error(ErrorKind::InvalidArgument, "initial kind is not planar");
  }
  if (width < 16.0 * h)
    throw Error(ErrorKind::ResolutionTooCoarse, "domain is narrower than 16 grid cells");

  double extent = 0.0;
  for (const Vec2& m : s.markers) extent = std::max({extent, std::abs(m.x), std::abs(m.y)});
  const int K = static_cast<int>(std::ceil(extent / h)) + 2;
  GridField2D& g = s.field;
  g.nx = g.ny = 2 * K + 1;
  g.ix0 = g.iy0 = -K;
  g.h = h;
  g.v.assign(static_cast<std::size_t>(g.nx) * g.ny, 0.0);
  const std::vector<std::uint8_t> in = poly::grid_inside(poly::grid_crossings(s.markers, g), g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      Vec2 x = g.node(i, j);
      if (!in[static_cast<std::size_t>(j) * g.nx + i]) continue;
      double val;
      if (spec.kind == InitialKind::DiskCap) {
        val = k * (spec.R0 * spec.R0 - dot(x, x)) / (2.0 * spec.R0);
      } else {
        val = k * poly::inner_distance(shape, x);
      }
      g.at(i, j) = std::max(val, 0.0);
    }
  return s;
}

void validate(const RadialState& s, double concavity_tol) {
  const int N = s.size();
  if (N < 3) throw Error(ErrorKind::InvalidArgument, "radial state needs 3 nodes");
  if (!(s.front_radius > 0.0)) throw Error(ErrorKind::BadRadius, "front radius must be positive");
  if (s.heights.back() != 0.0) throw Error(ErrorKind::SupportViolation, "front node must carry 0");
  double fmax = 0.0;
  for (double f : s.heights) {
    if (!std::isfinite(f)) throw Error(ErrorKind::NegativeHeight, "non-finite height");
    if (f < 0.0) throw Error(ErrorKind::NegativeHeight, "negative height");
    fmax = std::max(fmax, f);
  }
  for (int i = 0; i + 1 < N; ++i)
    if (s.heights[i + 1] > s.heights[i] + 1e-12 * fmax)
      throw Error(ErrorKind::NonMonotone, "radial profile increases outward");
  const double h = s.spacing();
  // Rounding in the heights shows up in the second difference as ~eps fmax / h^2.
  const double slack = concavity_tol + 16.0 * std::numeric_limits<double>::epsilon() * fmax / (h * h);
  for (int i = 1; i + 1 < N; ++i) {
    double d2 = (s.heights[i + 1] - 2.0 * s.heights[i] + s.heights[i - 1]) / (h * h);
    if (d2 > slack) throw Error(ErrorKind::NonConcaveData, "radial profile is not concave");
  }
}

namespace {

Pchip interpolant(const RadialState& s) {
  std::vector<double> r(s.size());
  for (int i = 0; i < s.size(); ++i) r[i] = s.radius(i);
  return Pchip(std::move(r), s.heights, 0.0);
}

}  // namespace

double sample_gradient(const RadialState& s, double r) {
  if (!(r >= 0.0) || r > s.front_radius)
    throw Error(ErrorKind::OutsideDomain, "radius outside the support");
  return std::abs(interpolant(s).derivative(r));
}

double evaluate(const RadialState& s, double r) {
  r = std::abs(r);
  if (r >= s.front_radius) return 0.0;
  return interpolant(s)(r);
}

Vec2 sample_gradient(const PlanarState& s, Vec2 x) {
  if (!poly::inside(s.markers, x)) throw Error(ErrorKind::OutsideDomain, "point outside the front");
  const GridField2D& g = s.field;
  auto val = [&](int i, int j) { return g.in_range(i, j) ? g.at(i, j) : 0.0; };
  auto node_grad = [&](int i, int j) {
    return Vec2{(val(i + 1, j) - val(i - 1, j)) / (2.0 * g.h), (val(i, j + 1) - val(i, j - 1)) / (2.0 * g.h)};
  };
  double fx = x.x / g.h - g.ix0, fy = x.y / g.h - g.iy0;
  int i = static_cast<int>(std::floor(fx)), j = static_cast<int>(std::floor(fy));
  double wx = fx - i, wy = fy - j;
  Vec2 g00 = node_grad(i, j), g10 = node_grad(i + 1, j), g01 = node_grad(i, j + 1), g11 = node_grad(i + 1, j + 1);
  Vec2 out;
  for (int c = 0; c < 2; ++c)
    out[c] = (1 - wx) * (1 - wy) * g00[c] + wx * (1 - wy) * g10[c] + (1 - wx) * wy * g01[c] + wx * wy * g11[c];
  return out;
}

}  // namespace plap
