#include "hullglyph/imaging.hpp"

#include "hullglyph/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace hullglyph {

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height),
      data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
  if (width <= 0 || height <= 0) throw ShapeError("GrayImage: dimensions must be positive");
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> intensities)
    : width_(width), height_(height), data_(std::move(intensities)) {
  if (width <= 0 || height <= 0) throw ShapeError("GrayImage: dimensions must be positive");
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ShapeError("GrayImage: intensity count does not match dimensions");
  }
}

BinaryImage::BinaryImage(int width, int height)
    : width_(width), height_(height),
      bits_(static_cast<std::size_t>(std::max(width, 0)) * static_cast<std::size_t>(std::max(height, 0)), 0) {
  if (width < 0 || height < 0) throw ShapeError("BinaryImage: negative dimensions");
}

void BinaryImage::set(int col, int row, bool on) {
  auto& b = bits_[index(col, row)];
  if ((b != 0) == on) return;
  b = on ? 1 : 0;
  if (on) {
    ++object_count_;
  } else {
    --object_count_;
  }
}

int otsu_threshold(const GrayImage& img) {
  std::array<double, 256> hist{};
  for (const std::uint8_t v : img.data()) hist[v] += 1.0;

  const double total = static_cast<double>(img.data().size());
  double sum_all = 0.0;
  for (int i = 0; i < 256; ++i) sum_all += i * hist[i];

  // Class 0 is [0, t), class 1 is [t, 255].
  double w0 = 0.0;
  double sum0 = 0.0;
  double best_var = -1.0;
  int best_t = -1;
  for (int t = 1; t < 256; ++t) {
    w0 += hist[t - 1];
    sum0 += (t - 1) * hist[t - 1];
    const double w1 = total - w0;
    if (w0 == 0.0 || w1 == 0.0) continue;
    const double m0 = sum0 / w0;
    const double m1 = (sum_all - sum0) / w1;
    const double var = w0 * w1 * (m0 - m1) * (m0 - m1);
    if (var > best_var) {
      best_var = var;
      best_t = t;
    }
  }
  return best_t < 0 ? 128 : best_t;
}

BinaryImage binarize(const GrayImage& img, Threshold method) {
  const int t = method.value ? *method.value : otsu_threshold(img);
  BinaryImage out(img.width(), img.height());
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (img.at(c, r) < t) out.set(c, r, true);
    }
  }
  return out;
}

std::vector<Point> object_points(const BinaryImage& img) {
  std::vector<Point> pts;
  pts.reserve(img.object_count());
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (img.at(c, r)) pts.push_back({c, r});
    }
  }
  return pts;
}

Centroid center_of_gravity(const BinaryImage& img) {
  if (img.empty()) throw EmptyGlyph("center_of_gravity: no object pixel");
  double sc = 0.0;
  double sr = 0.0;
  for (const Point p : object_points(img)) {
    sc += p.col;
    sr += p.row;
  }
  const auto n = static_cast<double>(img.object_count());
  return {sc / n, sr / n};
}

namespace {

// round(num / den) for num >= 0, den > 0, halves up.
int round_ratio(long long num, long long den) {
  return static_cast<int>((2 * num + den) / (2 * den));
}

}  // namespace

BinaryImage normalize_cg(const BinaryImage& img, NormalizationSpec spec) {
  if (spec.target_size <= 0 || spec.margin < 0 || spec.target_size - 2 * spec.margin < 8) {
    throw ShapeError("normalize_cg: target_size - 2*margin must be at least 8");
  }
  if (img.empty()) throw EmptyGlyph("normalize_cg: image has no object pixel");

  int min_c = img.width();
  int max_c = -1;
  int min_r = img.height();
  int max_r = -1;
  for (const Point p : object_points(img)) {
    min_c = std::min(min_c, p.col);
    max_c = std::max(max_c, p.col);
    min_r = std::min(min_r, p.row);
    max_r = std::max(max_r, p.row);
  }

  // Scale maps pixel-center spans: the longer source span (extent - 1)
  // becomes (box - 1), so a 1-pixel object stays 1 pixel.
  const int box = spec.target_size - 2 * spec.margin;
  const long long src_span = std::max(max_c - min_c, max_r - min_r);
  const long long dst_span = box - 1;

  const auto scaled_extent = [&](int span) {
    return src_span == 0 ? 1 : round_ratio(span * dst_span, src_span) + 1;
  };
  const int out_w = scaled_extent(max_c - min_c);
  const int out_h = scaled_extent(max_r - min_r);

  BinaryImage scaled(out_w, out_h);
  for (int v = 0; v < out_h; ++v) {
    const int sr = src_span == 0 ? 0 : std::min(round_ratio(v * src_span, dst_span), max_r - min_r);
    for (int u = 0; u < out_w; ++u) {
      const int sc = src_span == 0 ? 0 : std::min(round_ratio(u * src_span, dst_span), max_c - min_c);
      if (img.at(min_c + sc, min_r + sr)) scaled.set(u, v, true);
    }
  }

  const Centroid cg = center_of_gravity(scaled);
  const double center = (spec.target_size - 1) / 2.0;
  const auto offset = [&](double cg_coord, int extent) {
    const int o = static_cast<int>(std::floor(center - cg_coord + 0.5));
    return std::clamp(o, 0, spec.target_size - extent);
  };
  const int off_c = offset(cg.x, out_w);
  const int off_r = offset(cg.y, out_h);

  BinaryImage out(spec.target_size, spec.target_size);
  for (int v = 0; v < out_h; ++v) {
    for (int u = 0; u < out_w; ++u) {
      if (scaled.at(u, v)) out.set(u + off_c, v + off_r, true);
    }
  }
  return out;
}

}  // namespace hullglyph
