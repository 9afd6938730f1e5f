#pragma once

#include <cstdint>
#include <vector>

#include "plap/core.hpp"

namespace plap::poly {

double signed_area(const std::vector<Vec2>& P);
double perimeter(const std::vector<Vec2>& P);

// Reverses clockwise input so the result is counter-clockwise.
std::vector<Vec2> orient_ccw(std::vector<Vec2> P);

// cross(P[k]-P[k-1], P[k+1]-P[k]) at every vertex.
std::vector<double> turn_crosses(const std::vector<Vec2>& P);

// Every turn cross >= -tol. tol is absolute.
bool is_convex(const std::vector<Vec2>& P, double tol);
// Every turn cross > 0 (no collinear vertices).
bool is_strictly_convex(const std::vector<Vec2>& P);

// Strict interior test for a counter-clockwise convex polygon.
bool inside(const std::vector<Vec2>& P, Vec2 x);
// Distance to the boundary for a point inside a convex counter-clockwise
// polygon (min over edge lines). Negative outside.
double inner_distance(const std::vector<Vec2>& P, Vec2 x);

// M markers: every vertex plus uniform points on each edge, edge counts
// proportional to length. Counter-clockwise, starting at P[0].
std::vector<Vec2> place_on_polygon(const std::vector<Vec2>& P, int M);
// M markers at angles 2 pi k / M on the circle of radius R about the origin.
std::vector<Vec2> place_on_circle(double R, int M);

// Redistributes count points (default: the same number) at uniform arclength along the
// closed polyline, keeping P[0] fixed. Points stay on the polyline, so a
// convex input gives a convex output.
std::vector<Vec2> resample_uniform(const std::vector<Vec2>& P, int count = 0);

// Same, with the points placed on the Catmull-Rom spline through P. Convexity of
// the output is not guaranteed.
std::vector<Vec2> resample_spline(const std::vector<Vec2>& P, int count = 0);

// Inward unit normal at vertex k, averaged from the two adjacent edges.
Vec2 vertex_normal(const std::vector<Vec2>& P, int k);

// Signed curvature of the circle through a, b, c (positive for a left turn).
double menger_curvature(Vec2 a, Vec2 b, Vec2 c);

// Circle through three points; returns false when they are collinear.
bool circumcircle(Vec2 a, Vec2 b, Vec2 c, Vec2& center, double& radius);

// Catmull-Rom segment between P[k] and P[k+1], parameter u in [0, 1].
Vec2 spline_point(const std::vector<Vec2>& P, int k, double u);
Vec2 spline_tangent(const std::vector<Vec2>& P, int k, double u);

// Extent of the polygon along the line {x[axis] = c}: the parameter values of the
// two crossings in the other coordinate, and the edges they lie on. Returns false
// when the line misses the polygon interior.
struct Span {
  double lo = 0.0;
  double hi = 0.0;
  int edge_lo = -1;
  int edge_hi = -1;
};
bool line_span(const std::vector<Vec2>& P, int axis, double c, Span& span);

// Crossing of the line {x[axis] = c} with the spline segment on edge k, given
// the chord crossing as a starting guess. Falls back to the chord value.
double spline_crossing(const std::vector<Vec2>& P, int k, int axis, double c, double chord_value);

// Spline crossings of every grid row and column. A node is inside when it lies
// strictly between the crossings of both its row and its column; the same
// crossings give the Dirichlet arms, so the mask and the cut cells agree.
struct GridCrossings {
  std::vector<std::uint8_t> row_ok, col_ok;
  std::vector<double> row_lo, row_hi, col_lo, col_hi;
};
GridCrossings grid_crossings(const std::vector<Vec2>& P, const GridField2D& g);
std::vector<std::uint8_t> grid_inside(const GridCrossings& c, const GridField2D& g);

}  // namespace plap::poly
