#include "hullglyph/features.hpp"

#include "hullglyph/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hullglyph {

const char* to_string(ScanDirection dir) {
  switch (dir) {
    case ScanDirection::from_top: return "from_top";
    case ScanDirection::from_bottom: return "from_bottom";
    case ScanDirection::from_left: return "from_left";
    case ScanDirection::from_right: return "from_right";
  }
  return "?";
}

std::size_t DirectionalProfile::intersecting() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const ScanEntry& e) { return e.intersects_hull; }));
}

namespace {

struct ScanGeometry {
  int lines;
  int length;
};

ScanGeometry scan_geometry(ScanDirection dir, int width, int height) {
  switch (dir) {
    case ScanDirection::from_left:
    case ScanDirection::from_right:
      return {height, width};
    case ScanDirection::from_top:
    case ScanDirection::from_bottom:
      return {width, height};
  }
  return {0, 0};
}

// Pixel at position `k` along scanline `line`.
Point scan_pixel(ScanDirection dir, int line, int k, int width, int height) {
  switch (dir) {
    case ScanDirection::from_left: return {k, line};
    case ScanDirection::from_right: return {width - 1 - k, line};
    case ScanDirection::from_top: return {line, k};
    case ScanDirection::from_bottom: return {line, height - 1 - k};
  }
  return {};
}

}  // namespace

DirectionalProfile directional_profile(const BinaryImage& img, const HullMask& mask, ScanDirection dir) {
  if (img.width() != mask.width() || img.height() != mask.height()) {
    throw ShapeError("directional_profile: mask and image sizes differ");
  }
  const int w = img.width();
  const int h = img.height();
  const ScanGeometry g = scan_geometry(dir, w, h);

  DirectionalProfile profile;
  profile.direction = dir;
  profile.entries.resize(static_cast<std::size_t>(g.lines));

  for (int line = 0; line < g.lines; ++line) {
    int entry = -1;
    int exit = -1;
    int first_object = -1;
    for (int k = 0; k < g.length; ++k) {
      const Point p = scan_pixel(dir, line, k, w, h);
      if (!mask.covers(p.col, p.row)) continue;
      if (entry < 0) entry = k;
      exit = k;
      if (first_object < 0 && img.at(p.col, p.row)) first_object = k;
    }
    if (entry < 0) continue;

    ScanEntry& e = profile.entries[static_cast<std::size_t>(line)];
    e.intersects_hull = true;
    e.entry_pixel = scan_pixel(dir, line, entry, w, h);
    if (first_object >= 0) {
      e.d_cp = first_object - entry;
      e.gap_length = e.d_cp;
    } else {
      e.no_object = true;
      e.d_cp = exit - entry + 1;
      e.gap_length = e.d_cp;
    }
  }
  return profile;
}

DirectionalFeatures directional_features(const DirectionalProfile& profile, const DeficiencyMap& dmap) {
  const int w = dmap.width();
  const int h = dmap.height();
  DirectionalFeatures f;
  double dcp_sum = 0.0;
  double index_sum = 0.0;
  std::set<int> visible;

  for (std::size_t line = 0; line < profile.entries.size(); ++line) {
    const ScanEntry& e = profile.entries[line];
    if (!e.intersects_hull) continue;
    if (e.d_cp == 0) {
      f.zero_lines += 1.0;
      continue;
    }
    f.positive_lines += 1.0;
    f.max_dcp = std::max(f.max_dcp, static_cast<double>(e.d_cp));
    dcp_sum += e.d_cp;
    index_sum += static_cast<double>(line);

    const ScanGeometry g = scan_geometry(profile.direction, w, h);
    // Recover the entry position along the scan from the entry pixel.
    int start = 0;
    switch (profile.direction) {
      case ScanDirection::from_left: start = e.entry_pixel.col; break;
      case ScanDirection::from_right: start = w - 1 - e.entry_pixel.col; break;
      case ScanDirection::from_top: start = e.entry_pixel.row; break;
      case ScanDirection::from_bottom: start = h - 1 - e.entry_pixel.row; break;
    }
    for (int k = start; k < start + e.gap_length && k < g.length; ++k) {
      const Point p = scan_pixel(profile.direction, static_cast<int>(line), k, w, h);
      if (dmap.label(p.col, p.row) == PixelLabel::bay) visible.insert(dmap.component(p.col, p.row));
    }
  }
  if (f.positive_lines > 0.0) {
    f.mean_dcp = dcp_sum / f.positive_lines;
    f.mean_line_index = index_sum / f.positive_lines;
  }
  f.visible_bays = static_cast<double>(visible.size());
  return f;
}

double perimeter_feature(const std::array<DirectionalProfile, 4>& profiles) {
  double total = 0.0;
  for (const auto& p : profiles) {
    for (const ScanEntry& e : p.entries) {
      if (e.intersects_hull && e.d_cp == 0) total += 1.0;
    }
  }
  return total;
}

RegionFeatures region_features(const BinaryImage& img) {
  RegionFeatures out{};
  if (img.empty()) return out;

  const ConvexHull hull = convex_hull(object_points(img));
  if (hull.degenerate()) return out;

  const HullMask mask = rasterize_hull(hull, img.width(), img.height());
  const DeficiencyMap dmap = analyze_deficiency(img, mask);

  std::array<DirectionalProfile, 4> profiles;
  for (std::size_t d = 0; d < kScanOrder.size(); ++d) {
    profiles[d] = directional_profile(img, mask, kScanOrder[d]);
    const auto values = directional_features(profiles[d], dmap).values();
    std::copy(values.begin(), values.end(), out.begin() + static_cast<std::ptrdiff_t>(d * 6));
  }
  out[24] = perimeter_feature(profiles);
  return out;
}

int round_half_toward_zero(double v) {
  const double t = std::trunc(v);
  const double frac = v - t;
  if (frac > 0.5) return static_cast<int>(t) + 1;
  if (frac < -0.5) return static_cast<int>(t) - 1;
  return static_cast<int>(t);
}

Quadrants quadrant_split(const BinaryImage& img) {
  Quadrants q;
  if (img.empty()) return q;
  const ConvexHull hull = convex_hull(object_points(img));
  if (hull.degenerate()) return q;

  const Centroid c = centroid(hull);
  const int cc = std::clamp(round_half_toward_zero(c.x), 0, img.width());
  const int rc = std::clamp(round_half_toward_zero(c.y), 0, img.height());
  q.split = {cc, rc};

  const int w = img.width();
  const int h = img.height();
  const std::array<Point, 4> origin{{{0, 0}, {cc, 0}, {0, rc}, {cc, rc}}};
  const std::array<Point, 4> size{{{cc, rc}, {w - cc, rc}, {cc, h - rc}, {w - cc, h - rc}}};
  for (std::size_t i = 0; i < 4; ++i) {
    BinaryImage sub(size[i].col, size[i].row);
    for (int r = 0; r < size[i].row; ++r) {
      for (int col = 0; col < size[i].col; ++col) {
        if (img.at(origin[i].col + col, origin[i].row + r)) sub.set(col, r, true);
      }
    }
    q.images[i] = std::move(sub);
  }
  return q;
}

FeatureVector extract_features(const BinaryImage& img) {
  if (img.empty()) throw EmptyGlyph("extract_features: image has no object pixel");
  FeatureVector out{};
  const RegionFeatures whole = region_features(img);
  std::copy(whole.begin(), whole.end(), out.begin());

  const Quadrants q = quadrant_split(img);
  for (std::size_t i = 0; i < 4; ++i) {
    const RegionFeatures block = region_features(q.images[i]);
    std::copy(block.begin(), block.end(), out.begin() + static_cast<std::ptrdiff_t>((i + 1) * kRegionFeatureCount));
  }
  return out;
}

}  // namespace hullglyph
