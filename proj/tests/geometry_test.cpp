#include "hullglyph/error.hpp"
#include "hullglyph/geometry.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace hullglyph;

namespace {

std::set<Point> as_set(const std::vector<Point>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(ConvexHull, TriangleIsItsOwnHull) {
  const std::vector<Point> pts{{0, 0}, {2, 0}, {0, 2}};
  const ConvexHull h = convex_hull(pts);
  EXPECT_EQ(h.vertices(), (std::vector<Point>{{0, 0}, {2, 0}, {0, 2}}));
}

TEST(ConvexHull, FilledSquareKeepsCorners) {
  std::vector<Point> pts;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) pts.push_back({c, r});
  }
  const ConvexHull h = convex_hull(pts);
  EXPECT_EQ(h.vertices(), (std::vector<Point>{{0, 0}, {2, 0}, {2, 2}, {0, 2}}));
}

TEST(ConvexHull, PivotIsLowestRowThenLowestColumn) {
  const std::vector<Point> pts{{5, 3}, {1, 1}, {4, 1}, {2, 6}, {0, 4}};
  const ConvexHull h = convex_hull(pts);
  EXPECT_EQ(h.vertices().front(), (Point{1, 1}));
}

TEST(ConvexHull, EmptyInputThrows) {
  EXPECT_THROW(convex_hull(std::span<const Point>{}), EmptyPointSet);
}

TEST(ConvexHull, DegenerateInputs) {
  const std::vector<Point> one{{3, 4}, {3, 4}};
  EXPECT_EQ(convex_hull(one).vertices(), (std::vector<Point>{{3, 4}}));
  EXPECT_TRUE(convex_hull(one).degenerate());

  const std::vector<Point> line{{2, 2}, {0, 0}, {1, 1}, {3, 3}};
  const ConvexHull h = convex_hull(line);
  EXPECT_EQ(h.vertices(), (std::vector<Point>{{0, 0}, {3, 3}}));
  EXPECT_TRUE(h.degenerate());
  EXPECT_EQ(polygon_area(h), 0.0);
  EXPECT_THROW(centroid(h), DegenerateHull);
  const Centroid c = centroid_or_vertex_mean(h);
  EXPECT_DOUBLE_EQ(c.x, 1.5);
  EXPECT_DOUBLE_EQ(c.y, 1.5);
}

TEST(ConvexHull, MatchesGiftWrappingOracle) {
  Rng rng(20240601);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto pts = testing_support::random_points(rng, 64, 63);
    const ConvexHull h = convex_hull(pts);
    ASSERT_EQ(as_set(h.vertices()), oracle::gift_wrap(pts)) << "trial " << trial;
    ASSERT_TRUE(oracle::strictly_convex_ccw(h.vertices()));
    for (const Point p : pts) ASSERT_TRUE(oracle::inside_or_on(h.vertices(), p));
  }
}

TEST(ConvexHull, Idempotent) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = testing_support::random_points(rng, 64, 63);
    const ConvexHull h = convex_hull(pts);
    EXPECT_EQ(convex_hull(h.vertices()).vertices(), h.vertices());
  }
}

TEST(ConvexHull, InsertingInteriorPointKeepsVertices) {
  Rng rng(12);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto pts = testing_support::random_points(rng, 64, 63);
    const ConvexHull h = convex_hull(pts);
    if (h.degenerate()) continue;
    const Point q{rng.between(0, 63), rng.between(0, 63)};
    bool strictly_inside = true;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (oracle::cross(h.vertices()[i], h.vertices()[(i + 1) % h.size()], q) <= 0) strictly_inside = false;
    }
    if (!strictly_inside) continue;
    pts.push_back(q);
    EXPECT_EQ(convex_hull(pts).vertices(), h.vertices());
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(PolygonArea, Examples) {
  EXPECT_DOUBLE_EQ(polygon_area(ConvexHull({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), 1.0);
  EXPECT_DOUBLE_EQ(polygon_area(ConvexHull({{0, 0}, {4, 0}, {0, 3}})), 6.0);
  EXPECT_DOUBLE_EQ(polygon_area(ConvexHull({{0, 0}, {4, 0}})), 0.0);
}

TEST(Centroid, Examples) {
  const Centroid sq = centroid(ConvexHull({{0, 0}, {2, 0}, {2, 2}, {0, 2}}));
  EXPECT_DOUBLE_EQ(sq.x, 1.0);
  EXPECT_DOUBLE_EQ(sq.y, 1.0);
  const Centroid tri = centroid(ConvexHull({{0, 0}, {3, 0}, {0, 3}}));
  EXPECT_DOUBLE_EQ(tri.x, 1.0);
  EXPECT_DOUBLE_EQ(tri.y, 1.0);
}

TEST(PolygonArea, AreaAndCentroidMatchFanTriangulation) {
  Rng rng(13);
  int checked = 0;
  while (checked < 300) {
    const ConvexHull h = convex_hull(testing_support::random_points(rng, 64, 63));
    if (h.degenerate()) continue;
    const auto ref = oracle::fan_triangulation(
        h.vertices(), [](Point p) { return double(p.col); }, [](Point p) { return double(p.row); });
    const double a = polygon_area(h);
    EXPECT_GT(a, 0.0);
    EXPECT_NEAR(a, ref.area, 1e-9 * ref.area);
    const Centroid c = centroid(h);
    EXPECT_NEAR(c.x, ref.cx, 1e-9 * std::abs(ref.cx));
    EXPECT_NEAR(c.y, ref.cy, 1e-9 * std::abs(ref.cy));
    // Strictly inside.
    for (std::size_t i = 0; i < h.size(); ++i) {
      const Point a0 = h.vertices()[i];
      const Point b0 = h.vertices()[(i + 1) % h.size()];
      EXPECT_GT((b0.col - a0.col) * (c.y - a0.row) - (b0.row - a0.row) * (c.x - a0.col), 0.0);
    }
    ++checked;
  }
}

TEST(Centroid, CommutesWithAffineMaps) {
  Rng rng(14);
  int checked = 0;
  while (checked < 200) {
    std::vector<RealPoint> pts;
    const int n = rng.between(3, 40);
    for (int i = 0; i < n; ++i) pts.push_back({rng.uniform(0, 63), rng.uniform(0, 63)});
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2), c = rng.uniform(-2, 2), d = rng.uniform(-2, 2);
    const double det = a * d - b * c;
    if (std::abs(det) < 0.1) continue;
    const double tx = rng.uniform(-50, 50), ty = rng.uniform(-50, 50);
    const auto map = [&](RealPoint p) { return RealPoint{a * p.x + b * p.y + tx, c * p.x + d * p.y + ty}; };

    const auto hull = convex_hull(pts);
    if (std::abs(polygon_area(hull)) < 1.0) continue;
    std::vector<RealPoint> moved;
    for (const RealPoint p : pts) moved.push_back(map(p));

    const Centroid before = centroid(hull);
    const RealPoint expected = map({before.x, before.y});
    const Centroid after = centroid(convex_hull(moved));
    EXPECT_NEAR(after.x, expected.x, 1e-6);
    EXPECT_NEAR(after.y, expected.y, 1e-6);
    ++checked;
  }
}

TEST(TraceLine, HitsEveryLatticePointOnTheSegment) {
  Rng rng(15);
  for (int trial = 0; trial < 500; ++trial) {
    const Point a{rng.between(0, 40), rng.between(0, 40)};
    const Point b{rng.between(0, 40), rng.between(0, 40)};
    const auto traced = as_set(trace_line(a, b));
    EXPECT_TRUE(traced.count(a) && traced.count(b));
    for (int r = std::min(a.row, b.row); r <= std::max(a.row, b.row); ++r) {
      for (int c = std::min(a.col, b.col); c <= std::max(a.col, b.col); ++c) {
        if (oracle::cross(a, b, {c, r}) == 0) EXPECT_TRUE(traced.count({c, r}));
      }
    }
  }
}

TEST(RasterizeHull, SingleVertex) {
  const HullMask m = rasterize_hull(ConvexHull({{2, 3}}), 5, 5);
  EXPECT_TRUE(m.is_boundary(2, 3));
  EXPECT_EQ(m.boundary_count(), 1U);
  EXPECT_EQ(m.interior_count(), 0U);
}

TEST(RasterizeHull, AxisAlignedSquare) {
  const HullMask m = rasterize_hull(ConvexHull({{0, 0}, {4, 0}, {4, 4}, {0, 4}}), 6, 6);
  EXPECT_EQ(m.boundary_count(), 16U);
  EXPECT_EQ(m.interior_count(), 9U);
  for (int r = 1; r <= 3; ++r) {
    for (int c = 1; c <= 3; ++c) EXPECT_TRUE(m.is_interior(c, r));
  }
  EXPECT_FALSE(m.covers(5, 5));
}

TEST(RasterizeHull, CoversEveryPointInsideTheHull) {
  Rng rng(16);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pts = testing_support::random_points(rng, 30, 31);
    const ConvexHull h = convex_hull(pts);
    const HullMask m = rasterize_hull(h, 32, 32);
    for (int r = 0; r < 32; ++r) {
      for (int c = 0; c < 32; ++c) {
        ASSERT_FALSE(m.is_boundary(c, r) && m.is_interior(c, r));
        // Covered pixels are exactly the lattice points inside or on the polygon.
        ASSERT_EQ(m.covers(c, r), oracle::inside_or_on(h.vertices(), {c, r})) << c << "," << r;
      }
    }
    for (const Point p : pts) ASSERT_TRUE(m.covers(p.col, p.row));
  }
}

TEST(RasterizeHull, Deterministic) {
  const ConvexHull h({{3, 1}, {20, 6}, {14, 25}, {2, 12}});
  const HullMask a = rasterize_hull(h, 32, 32);
  const HullMask b = rasterize_hull(h, 32, 32);
  for (int r = 0; r < 32; ++r) {
    for (int c = 0; c < 32; ++c) EXPECT_EQ(a.at(c, r), b.at(c, r));
  }
}
