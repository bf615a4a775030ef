#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hullglyph {

// A pixel position. `col` is the x axis and `row` the y axis of every
// formula in this module, so counter-clockwise means positive signed area
// in (col, row) coordinates.
struct Point {
  int col = 0;
  int row = 0;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

// Unrounded coordinates, used where the hull of transformed points is needed.
struct RealPoint {
  double x = 0.0;
  double y = 0.0;
};

struct Centroid {
  double x = 0.0;  // column
  double y = 0.0;  // row
};

// Convex hull of a pixel set.
//
// Vertices are counter-clockwise, start at the pivot (lowest row, then lowest
// column) and contain no collinear triples. Fewer than three vertices means
// the input was a single point or a line segment.
class ConvexHull {
public:
  ConvexHull() = default;
  explicit ConvexHull(std::vector<Point> vertices) : vertices_(std::move(vertices)) {}

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool degenerate() const { return vertices_.size() < 3; }

private:
  std::vector<Point> vertices_;
};

// Graham scan. Throws EmptyPointSet for an empty input. O(n log n).
ConvexHull convex_hull(std::span<const Point> points);

// Same algorithm in real arithmetic. Orientation tests are exact only up to
// rounding, which is adequate for the well-conditioned inputs it is used on.
std::vector<RealPoint> convex_hull(std::span<const RealPoint> points);

// Shoelace area; zero for fewer than three vertices.
double polygon_area(const ConvexHull& hull);
double polygon_area(std::span<const RealPoint> polygon);

// Area centroid. Throws DegenerateHull when the area is zero.
Centroid centroid(const ConvexHull& hull);
Centroid centroid(std::span<const RealPoint> polygon);

// centroid(), or the arithmetic mean of the vertices for degenerate hulls.
Centroid centroid_or_vertex_mean(const ConvexHull& hull);

// Pixel coverage of a hull on a width x height grid.
class HullMask {
public:
  enum class Cell : std::uint8_t { outside = 0, boundary = 1, interior = 2 };

  HullMask() = default;
  HullMask(int width, int height)
      : width_(width), height_(height),
        cells_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), Cell::outside) {}

  int width() const { return width_; }
  int height() const { return height_; }

  Cell at(int col, int row) const { return cells_[index(col, row)]; }
  void set(int col, int row, Cell c) { cells_[index(col, row)] = c; }

  bool is_boundary(int col, int row) const { return at(col, row) == Cell::boundary; }
  bool is_interior(int col, int row) const { return at(col, row) == Cell::interior; }
  bool covers(int col, int row) const { return at(col, row) != Cell::outside; }

  std::size_t boundary_count() const;
  std::size_t interior_count() const;

private:
  std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Cell> cells_;
};

// Boundary: digital segments between consecutive vertices, rounded toward
// the inside so every covered pixel lies in the closed polygon. Interior:
// the remaining grid points of each row's span. Vertices must lie inside
// the grid.
HullMask rasterize_hull(const ConvexHull& hull, int width, int height);

// Integer line tracing between two grid points, endpoints included.
std::vector<Point> trace_line(Point from, Point to);

}  // namespace hullglyph
