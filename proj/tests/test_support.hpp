#pragma once

#include "hullglyph/imaging.hpp"
#include "hullglyph/random.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace testing_support {

using hullglyph::BinaryImage;
using hullglyph::Point;
using hullglyph::Rng;

// Builds an image from rows of '#' (ink) and '.'.
inline BinaryImage from_ascii(const std::vector<std::string>& rows) {
  BinaryImage img(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) img.set(c, r, rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == '#');
  }
  return img;
}

// The 5x5 "C": rows 0 and 4 ink across cols 0-2, col 0 ink throughout.
inline BinaryImage c_shape() {
  return from_ascii({
      "###..",
      "#....",
      "#....",
      "#....",
      "###..",
  });
}

// The 5x5 "O": square perimeter, hollow center.
inline BinaryImage o_ring() {
  return from_ascii({
      "#####",
      "#...#",
      "#...#",
      "#...#",
      "#####",
  });
}

inline BinaryImage filled_rect(int w, int h, int c0, int r0, int rw, int rh) {
  BinaryImage img(w, h);
  for (int r = r0; r < r0 + rh; ++r) {
    for (int c = c0; c < c0 + rw; ++c) img.set(c, r, true);
  }
  return img;
}

inline void stamp_disc(BinaryImage& img, double cx, double cy, double radius) {
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (std::hypot(c - cx, r - cy) <= radius) img.set(c, r, true);
    }
  }
}

inline void stamp_stroke(BinaryImage& img, double x0, double y0, double x1, double y1, double radius) {
  const int steps = static_cast<int>(std::ceil(std::hypot(x1 - x0, y1 - y0) * 2)) + 1;
  for (int s = 0; s <= steps; ++s) {
    const double t = static_cast<double>(s) / steps;
    const double cx = x0 + t * (x1 - x0);
    const double cy = y0 + t * (y1 - y0);
    for (int r = static_cast<int>(cy - radius) - 1; r <= static_cast<int>(cy + radius) + 1; ++r) {
      for (int c = static_cast<int>(cx - radius) - 1; c <= static_cast<int>(cx + radius) + 1; ++c) {
        if (img.contains(c, r) && std::hypot(c - cx, r - cy) <= radius) img.set(c, r, true);
      }
    }
  }
}

// Random ink blobs of three kinds: thick polylines (bays), rings with gaps
// (lakes and bays), and sparse speckle (many small components). Never empty.
inline BinaryImage random_blob(Rng& rng, int w, int h, bool speckle = true) {
  BinaryImage img(w, h);
  const auto kind = rng.below(speckle ? 3 : 2);
  if (kind == 0) {
    const int n = rng.between(2, 5);
    double x = rng.uniform(2, w - 3);
    double y = rng.uniform(2, h - 3);
    const double radius = rng.uniform(0.5, 2.5);
    for (int i = 0; i < n; ++i) {
      const double nx = rng.uniform(2, w - 3);
      const double ny = rng.uniform(2, h - 3);
      stamp_stroke(img, x, y, nx, ny, radius);
      x = nx;
      y = ny;
    }
  } else if (kind == 1) {
    const double cx = rng.uniform(w * 0.3, w * 0.7);
    const double cy = rng.uniform(h * 0.3, h * 0.7);
    const double outer = rng.uniform(3.0, std::min(w, h) * 0.4);
    const double inner = outer * rng.uniform(0.3, 0.7);
    const double gap = rng.uniform() < 0.5 ? rng.uniform(0.0, 6.28) : -1.0;
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        const double d = std::hypot(c - cx, r - cy);
        const double a = std::atan2(r - cy, c - cx) + 3.14159265358979;
        const bool in_gap = gap >= 0 && std::abs(a - gap) < 0.6;
        if (d <= outer && d >= inner && !in_gap) img.set(c, r, true);
      }
    }
  } else {
    const double density = rng.uniform(0.05, 0.5);
    const int c0 = rng.between(0, w / 3);
    const int r0 = rng.between(0, h / 3);
    const int c1 = rng.between(2 * w / 3, w - 1);
    const int r1 = rng.between(2 * h / 3, h - 1);
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        if (rng.uniform() < density) img.set(c, r, true);
      }
    }
  }
  if (img.empty()) img.set(w / 2, h / 2, true);
  return img;
}

inline std::vector<Point> random_points(Rng& rng, int max_count, int max_coord) {
  const int n = rng.between(1, max_count);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back({rng.between(0, max_coord), rng.between(0, max_coord)});
  return pts;
}

}  // namespace testing_support
