#include "hullglyph/geometry.hpp"

#include "hullglyph/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace hullglyph {
namespace {

std::int64_t cross(Point o, Point a, Point b) {
  return static_cast<std::int64_t>(a.col - o.col) * (b.row - o.row) -
         static_cast<std::int64_t>(a.row - o.row) * (b.col - o.col);
}

std::int64_t dist2(Point a, Point b) {
  const std::int64_t dc = a.col - b.col;
  const std::int64_t dr = a.row - b.row;
  return dc * dc + dr * dr;
}

double cross(RealPoint o, RealPoint a, RealPoint b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Pivot-first stack scan over points already sorted by polar angle around
// sorted[0]. Non-left turns are popped, so collinear boundary points vanish.
template <class P>
std::vector<P> graham_scan(const std::vector<P>& sorted) {
  std::vector<P> stack;
  stack.reserve(sorted.size());
  for (const P& p : sorted) {
    while (stack.size() >= 2 && cross(stack[stack.size() - 2], stack.back(), p) <= 0) {
      stack.pop_back();
    }
    stack.push_back(p);
  }
  return stack;
}

std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  return -floor_div(-num, den);
}

}  // namespace

ConvexHull convex_hull(std::span<const Point> points) {
  if (points.empty()) throw EmptyPointSet("convex_hull: empty point set");

  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // pts[0] is the pivot. Every other point has a polar angle in [0, pi)
  // around it, so the cross product is a strict ordering.
  const Point pivot = pts.front();
  std::sort(pts.begin() + 1, pts.end(), [pivot](Point a, Point b) {
    const std::int64_t c = cross(pivot, a, b);
    if (c != 0) return c > 0;
    return dist2(pivot, a) < dist2(pivot, b);
  });
  return ConvexHull(graham_scan(pts));
}

std::vector<RealPoint> convex_hull(std::span<const RealPoint> points) {
  if (points.empty()) throw EmptyPointSet("convex_hull: empty point set");

  std::vector<RealPoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](RealPoint a, RealPoint b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](RealPoint a, RealPoint b) { return a.x == b.x && a.y == b.y; }),
            pts.end());

  // atan2 keys keep the comparator a strict weak ordering under rounding.
  const RealPoint pivot = pts.front();
  struct Keyed {
    double angle;
    double dist;
    RealPoint p;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(pts.size() - 1);
  for (auto it = pts.begin() + 1; it != pts.end(); ++it) {
    const double dx = it->x - pivot.x;
    const double dy = it->y - pivot.y;
    keyed.push_back({std::atan2(dy, dx), dx * dx + dy * dy, *it});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return a.angle != b.angle ? a.angle < b.angle : a.dist < b.dist;
  });
  for (std::size_t i = 0; i < keyed.size(); ++i) pts[i + 1] = keyed[i].p;
  return graham_scan(pts);
}

double polygon_area(const ConvexHull& hull) {
  const auto& v = hull.vertices();
  if (v.size() < 3) return 0.0;
  std::int64_t twice = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % v.size()];
    twice += static_cast<std::int64_t>(a.col) * b.row - static_cast<std::int64_t>(b.col) * a.row;
  }
  return static_cast<double>(twice) / 2.0;
}

double polygon_area(std::span<const RealPoint> polygon) {
  if (polygon.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const RealPoint a = polygon[i];
    const RealPoint b = polygon[(i + 1) % polygon.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2.0;
}

Centroid centroid(const ConvexHull& hull) {
  const auto& v = hull.vertices();
  if (v.size() < 3) throw DegenerateHull("centroid: hull has fewer than 3 vertices");
  std::int64_t twice_area = 0;
  std::int64_t sx = 0;
  std::int64_t sy = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % v.size()];
    const std::int64_t w = static_cast<std::int64_t>(a.col) * b.row - static_cast<std::int64_t>(b.col) * a.row;
    twice_area += w;
    sx += (a.col + b.col) * w;
    sy += (a.row + b.row) * w;
  }
  if (twice_area == 0) throw DegenerateHull("centroid: zero-area hull");
  // 1/(6A) = 1/(3 * twice_area)
  const double denom = 3.0 * static_cast<double>(twice_area);
  return {static_cast<double>(sx) / denom, static_cast<double>(sy) / denom};
}

Centroid centroid(std::span<const RealPoint> polygon) {
  const double area = polygon_area(polygon);
  if (area == 0.0) throw DegenerateHull("centroid: zero-area polygon");
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const RealPoint a = polygon[i];
    const RealPoint b = polygon[(i + 1) % polygon.size()];
    const double w = a.x * b.y - b.x * a.y;
    sx += (a.x + b.x) * w;
    sy += (a.y + b.y) * w;
  }
  return {sx / (6.0 * area), sy / (6.0 * area)};
}

Centroid centroid_or_vertex_mean(const ConvexHull& hull) {
  if (!hull.degenerate()) return centroid(hull);
  const auto& v = hull.vertices();
  if (v.empty()) throw DegenerateHull("centroid: empty hull");
  double sx = 0.0;
  double sy = 0.0;
  for (const Point p : v) {
    sx += p.col;
    sy += p.row;
  }
  const auto n = static_cast<double>(v.size());
  return {sx / n, sy / n};
}

std::size_t HullMask::boundary_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), Cell::boundary));
}

std::size_t HullMask::interior_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), Cell::interior));
}

std::vector<Point> trace_line(Point from, Point to) {
  std::vector<Point> out;
  const int dx = std::abs(to.col - from.col);
  const int dy = -std::abs(to.row - from.row);
  const int sx = from.col < to.col ? 1 : -1;
  const int sy = from.row < to.row ? 1 : -1;
  int err = dx + dy;
  Point p = from;
  out.reserve(static_cast<std::size_t>(std::max(dx, -dy)) + 1);
  for (;;) {
    out.push_back(p);
    if (p == to) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      p.col += sx;
    }
    if (e2 <= dx) {
      err += dx;
      p.row += sy;
    }
  }
  return out;
}

namespace {

std::int64_t edge_side(Point a, Point b, Point p) {
  return static_cast<std::int64_t>(b.col - a.col) * (p.row - a.row) -
         static_cast<std::int64_t>(b.row - a.row) * (p.col - a.col);
}

bool inside_or_on(const std::vector<Point>& v, Point p) {
  if (v.size() == 2) return edge_side(v[0], v[1], p) == 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (edge_side(v[i], v[(i + 1) % v.size()], p) < 0) return false;
  }
  return true;
}

// Digital edge a->b: one pixel per step of the major axis, the nearest one
// on the polygon's side of the line. Pixels falling outside the polygon
// (thin corners) are dropped, so the traced boundary never leaves the hull.
std::vector<Point> inward_trace(const std::vector<Point>& v, Point a, Point b) {
  std::vector<Point> out;
  const int dc = b.col - a.col;
  const int dr = b.row - a.row;
  const bool along_cols = std::abs(dc) >= std::abs(dr);
  const int steps = std::max(std::abs(dc), std::abs(dr));
  for (int k = 0; k <= steps; ++k) {
    Point lo;
    Point hi;
    if (along_cols) {
      const int col = a.col + (dc > 0 ? k : -k);
      const std::int64_t num = static_cast<std::int64_t>(col - a.col) * dr;
      lo = {col, static_cast<int>(a.row + floor_div(num, dc))};
      hi = {col, static_cast<int>(a.row + ceil_div(num, dc))};
    } else {
      const int row = a.row + (dr > 0 ? k : -k);
      const std::int64_t num = static_cast<std::int64_t>(row - a.row) * dc;
      lo = {static_cast<int>(a.col + floor_div(num, dr)), row};
      hi = {static_cast<int>(a.col + ceil_div(num, dr)), row};
    }
    const Point p = edge_side(a, b, lo) >= 0 ? lo : hi;
    if (inside_or_on(v, p)) out.push_back(p);
  }
  return out;
}

}  // namespace

HullMask rasterize_hull(const ConvexHull& hull, int width, int height) {
  HullMask mask(width, height);
  const auto& v = hull.vertices();
  if (v.empty()) return mask;

  if (v.size() == 1) {
    mask.set(v[0].col, v[0].row, HullMask::Cell::boundary);
    return mask;
  }

  const std::size_t edges = v.size() == 2 ? 1 : v.size();
  for (std::size_t i = 0; i < edges; ++i) {
    for (const Point p : inward_trace(v, v[i], v[(i + 1) % v.size()])) {
      mask.set(p.col, p.row, HullMask::Cell::boundary);
    }
  }

  int min_row = std::numeric_limits<int>::max();
  int max_row = std::numeric_limits<int>::min();
  for (const Point p : v) {
    min_row = std::min(min_row, p.row);
    max_row = std::max(max_row, p.row);
  }

  // For a convex polygon the even-odd span of a row is [leftmost crossing,
  // rightmost crossing]; crossings are exact rationals.
  for (int row = min_row; row <= max_row; ++row) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point a = v[i];
      const Point b = v[(i + 1) % v.size()];
      if (a.row == b.row) {
        if (a.row == row) {
          lo = std::min<std::int64_t>(lo, std::min(a.col, b.col));
          hi = std::max<std::int64_t>(hi, std::max(a.col, b.col));
        }
        continue;
      }
      if (row < std::min(a.row, b.row) || row > std::max(a.row, b.row)) continue;
      const std::int64_t num = static_cast<std::int64_t>(row - a.row) * (b.col - a.col);
      const std::int64_t den = b.row - a.row;
      lo = std::min(lo, a.col + ceil_div(num, den));
      hi = std::max(hi, a.col + floor_div(num, den));
    }
    for (std::int64_t col = lo; col <= hi; ++col) {
      const int c = static_cast<int>(col);
      if (!mask.is_boundary(c, row)) mask.set(c, row, HullMask::Cell::interior);
    }
  }
  return mask;
}

}  // namespace hullglyph
