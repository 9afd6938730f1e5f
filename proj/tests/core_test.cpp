#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "plap/core.hpp"
#include "plap/interpolation.hpp"
#include "plap/polygon.hpp"

using namespace plap;

namespace {

InitialSpec radial_spec(InitialKind kind, double R0) {
  InitialSpec s;
  s.kind = kind;
  s.R0 = R0;
  return s;
}

PParams params3() { return make_params(3.0, 0.01, 1); }

}  // namespace

TEST(Params, RejectsOutOfRange) {
  EXPECT_NO_THROW(make_params(2.5, 0.0, 1));
  EXPECT_THROW(make_params(2.0, 0.01, 1), Error);
  EXPECT_THROW(make_params(3.0, -1e-9, 1), Error);
  EXPECT_THROW(make_params(3.0, 0.01, 0), Error);
  EXPECT_EQ(make_params(3.5, 0.01, 2).q(), 1.75);
}

TEST(InitialRadial, ParabolicCapValues) {
  RadialState s = build_initial_radial(radial_spec(InitialKind::ParabolicCap, 1.0), params3(), 101);
  ASSERT_EQ(s.size(), 101);
  EXPECT_DOUBLE_EQ(s.heights.front(), 0.5);
  EXPECT_EQ(s.heights.back(), 0.0);
  EXPECT_EQ(s.front_radius, 1.0);
  EXPECT_NEAR(sample_gradient(s, 1.0), 1.0, 2.0 * s.spacing());
  for (int i = 0; i < s.size(); ++i) {
    const double r = s.radius(i);
    EXPECT_NEAR(s.heights[i], 0.5 * (1.0 - r * r), 1e-15);
  }
}

TEST(InitialRadial, ConeHasUnitSlope) {
  RadialState s = build_initial_radial(radial_spec(InitialKind::Cone, 2.0), params3(), 81);
  for (int i = 0; i < s.size(); ++i) EXPECT_NEAR(s.heights[i], 2.0 - s.radius(i), 1e-14);
  for (int i = 1; i < s.size(); ++i) EXPECT_NEAR((s.heights[i - 1] - s.heights[i]) / s.spacing(), 1.0, 1e-12);
}

TEST(InitialRadial, RejectsBadInput) {
  EXPECT_THROW(build_initial_radial(radial_spec(InitialKind::ParabolicCap, -1.0), params3(), 101), Error);
  try {
    build_initial_radial(radial_spec(InitialKind::ParabolicCap, -1.0), params3(), 101);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadRadius);
  }
  EXPECT_THROW(build_initial_radial(radial_spec(InitialKind::ParabolicCap, 1.0), params3(), 7), Error);
}

TEST(InitialRadial, TableIsInterpolatedLinearly) {
  InitialSpec spec = radial_spec(InitialKind::Table, 1.0);
  spec.table = {{0.0, 0.6}, {0.5, 0.5}, {1.0, 0.0}};
  RadialState s = build_initial_radial(spec, params3(), 21);
  EXPECT_EQ(s.front_radius, 1.0);
  EXPECT_NEAR(s.heights[5], 0.55, 1e-14);
  EXPECT_NEAR(s.heights[15], 0.25, 1e-14);

  spec.table = {{0.0, 0.5}, {0.5, 0.1}, {1.0, 0.0}};  // convex kink
  try {
    build_initial_radial(spec, params3(), 21);
    FAIL() << "convex table accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConcaveData);
  }
}

TEST(InitialRadial, StatesPassTheirOwnInvariants) {
  for (InitialKind k : {InitialKind::ParabolicCap, InitialKind::Cone}) {
    for (int N : {8, 51, 201}) {
      RadialState s = build_initial_radial(radial_spec(k, 1.3), params3(), N);
      EXPECT_NO_THROW(validate(s, 1e-12));
    }
  }
}

TEST(InitialRadial, CapGradientNeverExceedsOne) {
  RadialState s = build_initial_radial(radial_spec(InitialKind::ParabolicCap, 1.0), params3(), 201);
  for (int i = 0; i < s.size(); ++i) EXPECT_LE(sample_gradient(s, s.radius(i)), 1.0 + 1e-12);
}

TEST(Validate, RejectsMalformedStates) {
  RadialState s = build_initial_radial(radial_spec(InitialKind::ParabolicCap, 1.0), params3(), 21);
  RadialState neg = s;
  neg.heights[10] = -0.1;
  EXPECT_THROW(validate(neg, 1e-12), Error);
  RadialState bump = s;
  bump.heights[10] = bump.heights[2];
  EXPECT_THROW(validate(bump, 1e-12), Error);
  RadialState lifted = s;
  lifted.heights.back() = 1e-3;
  EXPECT_THROW(validate(lifted, 1e-12), Error);
}

TEST(SampleGradient, CapMidpointIsSecondOrder) {
  double prev = 0.0;
  for (int N : {51, 101, 201}) {
    RadialState s = build_initial_radial(radial_spec(InitialKind::ParabolicCap, 1.0), params3(), N);
    const double err = std::abs(sample_gradient(s, 0.5) - 0.5);
    EXPECT_LT(err, 0.5 * s.spacing() * s.spacing() + 1e-14);
    if (prev > 1e-14) EXPECT_LT(err, 0.3 * prev);
    prev = err;
  }
}

TEST(SampleGradient, FrontErrorHalvesUnderRefinement) {
  // Richardson oracle: one-sided error e(h) = C h, so e(h)/e(h/2) -> 2.
  std::vector<double> err;
  for (int N : {41, 81, 161, 321}) {
    RadialState s = build_initial_radial(radial_spec(InitialKind::ParabolicCap, 1.0), params3(), N);
    err.push_back(std::abs(sample_gradient(s, 1.0) - 1.0));
  }
  for (std::size_t k = 1; k < err.size(); ++k) {
    if (err[k - 1] < 1e-13) continue;
    EXPECT_NEAR(err[k - 1] / err[k], 2.0, 0.35);
  }
}

TEST(SampleGradient, OutsideTheSupportThrows) {
  RadialState s = build_initial_radial(radial_spec(InitialKind::ParabolicCap, 1.0), params3(), 21);
  EXPECT_THROW(sample_gradient(s, 1.5), Error);
}

TEST(InitialPlanar, DiskCapCentreValue) {
  InitialSpec spec;
  spec.kind = InitialKind::DiskCap;
  PlanarState s = build_initial_planar(spec, make_params(3.0, 0.01, 2), 1.0 / 64.0, 128);
  double top = 0.0;
  for (double v : s.field.v) top = std::max(top, v);
  EXPECT_DOUBLE_EQ(top, 0.5);
  EXPECT_EQ(s.markers.size(), 128u);
  EXPECT_TRUE(poly::is_strictly_convex(s.markers));
  for (const Vec2& m : s.markers) EXPECT_NEAR(norm(m), 1.0, 1e-14);
}

TEST(InitialPlanar, UnitSquareIsDistanceToBoundary) {
  InitialSpec spec;
  spec.kind = InitialKind::PolygonCap;
  spec.polygon = {{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}};
  PlanarState s = build_initial_planar(spec, make_params(3.0, 0.01, 2), 1.0 / 64.0, 128);
  const GridField2D& g = s.field;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 x = g.node(i, j);
      const double d = std::max(0.0, std::min(0.5 - std::abs(x.x), 0.5 - std::abs(x.y)));
      const bool strict = std::abs(x.x) < 0.5 && std::abs(x.y) < 0.5;
      EXPECT_NEAR(g.at(i, j), strict ? d : 0.0, 1e-14) << "node " << i << "," << j;
    }
  EXPECT_NEAR(g.at(g.nx / 2, g.ny / 2), 0.5, 1e-14);
}

TEST(InitialPlanar, RejectsReflexAndCoarse) {
  InitialSpec spec;
  spec.kind = InitialKind::PolygonCap;
  spec.polygon = {{0, 0}, {2, 0}, {1, 0.3}, {2, 2}, {0, 2}};
  try {
    build_initial_planar(spec, make_params(3.0, 0.01, 2), 1.0 / 64.0, 128);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConvexPolygon);
  }
  InitialSpec disk;
  disk.kind = InitialKind::DiskCap;
  try {
    build_initial_planar(disk, make_params(3.0, 0.01, 2), 0.25, 128);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResolutionTooCoarse);
  }
}

TEST(SampleGradientPlanar, ReproducesQuadratics) {
  InitialSpec spec;
  spec.kind = InitialKind::DiskCap;
  PlanarState s = build_initial_planar(spec, make_params(3.0, 0.01, 2), 1.0 / 32.0, 64);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = U(rng), b = U(rng), c = U(rng), d = U(rng), e = U(rng);
    for (int j = 0; j < s.field.ny; ++j)
      for (int i = 0; i < s.field.nx; ++i) {
        const Vec2 x = s.field.node(i, j);
        if (norm(x) < 1.0) s.field.at(i, j) = 1.0 + a * x.x + b * x.y + c * x.x * x.x + d * x.x * x.y + e * x.y * x.y;
      }
    for (Vec2 x : {Vec2{0.0, 0.0}, Vec2{0.25, -0.125}, Vec2{-0.3, 0.4}}) {
      const Vec2 g = sample_gradient(s, x);
      EXPECT_NEAR(g.x, a + 2 * c * x.x + d * x.y, 1e-10);
      EXPECT_NEAR(g.y, b + d * x.x + 2 * e * x.y, 1e-10);
    }
  }
  EXPECT_THROW(sample_gradient(s, Vec2{2.0, 0.0}), Error);
}

TEST(Pchip, PreservesMonotoneData) {
  std::vector<double> x{0, 0.1, 0.4, 0.5, 0.9, 1.0}, y{1.0, 0.99, 0.7, 0.69, 0.1, 0.0};
  Pchip P(x, y);
  double prev = P(0.0);
  for (int k = 1; k <= 1000; ++k) {
    const double v = P(k / 1000.0);
    EXPECT_LE(v, prev + 1e-15);
    EXPECT_GE(v, -1e-15);
    prev = v;
  }
  for (std::size_t k = 0; k < x.size(); ++k) EXPECT_DOUBLE_EQ(P(x[k]), y[k]);
}

TEST(Pchip, UniformRemapMatchesGeneralInterpolant) {
  std::vector<double> y;
  for (int k = 0; k <= 40; ++k) y.push_back(0.5 * (1.0 - std::pow(k / 40.0, 2)));
  std::vector<double> x;
  for (int k = 0; k <= 40; ++k) x.push_back(k * 0.025);
  Pchip P(x, y, 0.0);
  std::vector<double> out;
  pchip_remap_uniform(y, 0.025, 0.0249, out);
  ASSERT_EQ(out.size(), y.size());
  for (std::size_t j = 0; j < out.size(); ++j) EXPECT_NEAR(out[j], P(j * 0.0249), 1e-15);
}
