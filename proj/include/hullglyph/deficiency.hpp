#pragma once

#include "hullglyph/geometry.hpp"
#include "hullglyph/imaging.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hullglyph {

enum class PixelLabel : std::uint8_t { exterior, object, bay, lake };

// Labels every pixel of an image against its convex hull. The convex
// deficiency (hull pixels that are not ink) is split into 4-connected
// components; a component containing a hull boundary pixel is a bay, any
// other is a lake.
class DeficiencyMap {
public:
  DeficiencyMap() = default;
  DeficiencyMap(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  PixelLabel label(int col, int row) const { return labels_[index(col, row)]; }

  // Index into bays() / lakes() for a bay or lake pixel, -1 otherwise.
  int component(int col, int row) const { return component_[index(col, row)]; }

  const std::vector<std::vector<Point>>& bays() const { return bays_; }
  const std::vector<std::vector<Point>>& lakes() const { return lakes_; }

  std::size_t count(PixelLabel l) const;

private:
  friend DeficiencyMap analyze_deficiency(const BinaryImage&, const HullMask&);

  std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<PixelLabel> labels_;
  std::vector<int> component_;
  std::vector<std::vector<Point>> bays_;
  std::vector<std::vector<Point>> lakes_;
};

// `mask` must be rasterize_hull(convex_hull(object_points(img)), ...).
// Components are numbered in row-major order of their first pixel.
DeficiencyMap analyze_deficiency(const BinaryImage& img, const HullMask& mask);

// ASCII rendering: '2' object, '1' non-object hull boundary, '+' other bay
// pixels, '*' lake pixels, '0' background. One line per row.
std::string render_deficiency(const DeficiencyMap& dmap, const HullMask& mask);

}  // namespace hullglyph
