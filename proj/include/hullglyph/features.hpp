#pragma once

#include "hullglyph/deficiency.hpp"
#include "hullglyph/geometry.hpp"
#include "hullglyph/imaging.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace hullglyph {

enum class ScanDirection { from_top, from_bottom, from_left, from_right };

// Feature-block order inside a region.
inline constexpr std::array<ScanDirection, 4> kScanOrder{
    ScanDirection::from_top, ScanDirection::from_bottom, ScanDirection::from_left, ScanDirection::from_right};

const char* to_string(ScanDirection dir);

// One scanline of a directional scan. Scanlines are rows for left/right scans
// and columns for top/bottom scans; positions are measured along the scan.
struct ScanEntry {
  bool intersects_hull = false;
  // The scan left the hull without meeting ink; d_cp is then the number of
  // hull pixels crossed.
  bool no_object = false;
  int d_cp = 0;
  Point entry_pixel;
  // Pixels from the hull entry up to, not including, the first ink pixel.
  int gap_length = 0;
};

struct DirectionalProfile {
  ScanDirection direction = ScanDirection::from_left;
  std::vector<ScanEntry> entries;  // indexed by scanline

  std::size_t intersecting() const;
};

DirectionalProfile directional_profile(const BinaryImage& img, const HullMask& mask, ScanDirection dir);

// F1..F6 of one direction.
struct DirectionalFeatures {
  double max_dcp = 0.0;           // F1
  double positive_lines = 0.0;    // F2
  double mean_dcp = 0.0;          // F3, over lines with d_cp > 0
  double mean_line_index = 0.0;   // F4, over lines with d_cp > 0
  double zero_lines = 0.0;        // F5
  double visible_bays = 0.0;      // F6

  std::array<double, 6> values() const {
    return {max_dcp, positive_lines, mean_dcp, mean_line_index, zero_lines, visible_bays};
  }
};

DirectionalFeatures directional_features(const DirectionalProfile& profile, const DeficiencyMap& dmap);

// F25: zero-d_cp scanlines summed over the four directions. Corner pixels
// seen from two sides count twice.
double perimeter_feature(const std::array<DirectionalProfile, 4>& profiles);

inline constexpr std::size_t kRegionFeatureCount = 25;
inline constexpr std::size_t kFeatureCount = 125;

using RegionFeatures = std::array<double, kRegionFeatureCount>;

// [top F1..F6][bottom][left][right][F25]. Regions whose hull has fewer than
// three vertices yield zeros.
RegionFeatures region_features(const BinaryImage& img);

struct Quadrants {
  std::array<BinaryImage, 4> images;  // Q1 top-left, Q2 top-right, Q3 bottom-left, Q4 bottom-right
  Point split;                        // (c_c, r_c); (0, 0) when the split is undefined
};

// Splits at the hull centroid rounded to the nearest integer, halves toward
// zero. Degenerate hulls give four empty images.
Quadrants quadrant_split(const BinaryImage& img);

// Nearest integer, exact halves toward zero.
int round_half_toward_zero(double v);

using FeatureVector = std::array<double, kFeatureCount>;

// [whole image][Q1][Q2][Q3][Q4], 25 values each. Throws EmptyGlyph when the
// image has no ink.
FeatureVector extract_features(const BinaryImage& img);

}  // namespace hullglyph
