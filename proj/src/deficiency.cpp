#include "hullglyph/deficiency.hpp"

#include "hullglyph/error.hpp"

#include <algorithm>
#include <array>

namespace hullglyph {

DeficiencyMap::DeficiencyMap(int width, int height)
    : width_(width), height_(height),
      labels_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), PixelLabel::exterior),
      component_(labels_.size(), -1) {}

std::size_t DeficiencyMap::count(PixelLabel l) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), l));
}

DeficiencyMap analyze_deficiency(const BinaryImage& img, const HullMask& mask) {
  if (img.width() != mask.width() || img.height() != mask.height()) {
    throw ShapeError("analyze_deficiency: mask and image sizes differ");
  }
  const int w = img.width();
  const int h = img.height();
  DeficiencyMap dmap(w, h);

  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (img.at(c, r)) dmap.labels_[dmap.index(c, r)] = PixelLabel::object;
    }
  }

  const auto deficient = [&](int c, int r) {
    return mask.covers(c, r) && !img.at(c, r);
  };

  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
  std::vector<Point> stack;
  constexpr std::array<Point, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!deficient(c, r) || seen[dmap.index(c, r)]) continue;

      std::vector<Point> pixels;
      bool touches_boundary = false;
      seen[dmap.index(c, r)] = 1;
      stack.push_back({c, r});
      while (!stack.empty()) {
        const Point p = stack.back();
        stack.pop_back();
        pixels.push_back(p);
        touches_boundary = touches_boundary || mask.is_boundary(p.col, p.row);
        for (const Point d : kSteps) {
          const int nc = p.col + d.col;
          const int nr = p.row + d.row;
          if (nc < 0 || nr < 0 || nc >= w || nr >= h) continue;
          if (!deficient(nc, nr) || seen[dmap.index(nc, nr)]) continue;
          seen[dmap.index(nc, nr)] = 1;
          stack.push_back({nc, nr});
        }
      }
      std::sort(pixels.begin(), pixels.end(), [](Point a, Point b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
      });

      auto& list = touches_boundary ? dmap.bays_ : dmap.lakes_;
      const int id = static_cast<int>(list.size());
      const PixelLabel label = touches_boundary ? PixelLabel::bay : PixelLabel::lake;
      for (const Point p : pixels) {
        dmap.labels_[dmap.index(p.col, p.row)] = label;
        dmap.component_[dmap.index(p.col, p.row)] = id;
      }
      list.push_back(std::move(pixels));
    }
  }
  return dmap;
}

std::string render_deficiency(const DeficiencyMap& dmap, const HullMask& mask) {
  std::string out;
  out.reserve(static_cast<std::size_t>(dmap.width() + 1) * static_cast<std::size_t>(dmap.height()));
  for (int r = 0; r < dmap.height(); ++r) {
    for (int c = 0; c < dmap.width(); ++c) {
      switch (dmap.label(c, r)) {
        case PixelLabel::object: out += '2'; break;
        case PixelLabel::bay: out += mask.is_boundary(c, r) ? '1' : '+'; break;
        case PixelLabel::lake: out += '*'; break;
        case PixelLabel::exterior: out += '0'; break;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace hullglyph
