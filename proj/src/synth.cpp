#include "hullglyph/error.hpp"
#include "hullglyph/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace hullglyph {
namespace {

double segment_distance(RealPoint p, RealPoint a, RealPoint b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = a.x + t * dx - p.x;
  const double ey = a.y + t * dy - p.y;
  return std::sqrt(ex * ex + ey * ey);
}

}  // namespace

StrokePrototype class_prototype(std::uint64_t seed, std::size_t class_index) {
  Rng rng(derive_seed(seed, 1000 + class_index));
  StrokePrototype proto;
  const int n = rng.between(3, 6);
  proto.closed = rng.uniform() < 0.3;
  while (static_cast<int>(proto.points.size()) < n) {
    const RealPoint p{rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)};
    // Keep consecutive control points apart so every stroke is visible.
    if (!proto.points.empty()) {
      const RealPoint q = proto.points.back();
      if (std::hypot(p.x - q.x, p.y - q.y) < 0.3) continue;
    }
    proto.points.push_back(p);
  }
  return proto;
}

GrayImage render_glyph(const StrokePrototype& proto, int canvas, Rng& rng) {
  const double scale = rng.uniform(0.55, 0.85) * canvas;
  const double angle = rng.uniform(-0.2, 0.2);
  const double cx = canvas / 2.0 + rng.uniform(-0.08, 0.08) * canvas;
  const double cy = canvas / 2.0 + rng.uniform(-0.08, 0.08) * canvas;
  const double radius = rng.uniform(1.2, 2.4);
  const double background = rng.uniform(190.0, 235.0);
  const double ink = rng.uniform(20.0, 70.0);

  std::vector<RealPoint> pts;
  for (const RealPoint p : proto.points) {
    const double x = p.x - 0.5 + rng.normal(0.0, 0.035);
    const double y = p.y - 0.5 + rng.normal(0.0, 0.035);
    pts.push_back({cx + scale * (x * std::cos(angle) - y * std::sin(angle)),
                   cy + scale * (x * std::sin(angle) + y * std::cos(angle))});
  }
  if (proto.closed) pts.push_back(pts.front());

  GrayImage img(canvas, canvas);
  for (int r = 0; r < canvas; ++r) {
    for (int c = 0; c < canvas; ++c) {
      const RealPoint p{static_cast<double>(c), static_cast<double>(r)};
      double d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) d = std::min(d, segment_distance(p, pts[i], pts[i + 1]));
      const double level = (d <= radius ? ink : background) + rng.normal(0.0, 10.0);
      img.set(c, r, static_cast<std::uint8_t>(std::clamp(std::lround(level), 0L, 255L)));
    }
  }
  return img;
}

std::filesystem::path write_synthetic_corpus(const std::filesystem::path& dir, const SynthSpec& spec) {
  if (spec.classes == 0 || spec.per_class == 0) throw ShapeError("synth: classes and per-class count must be positive");
  if (spec.canvas < 16) throw ShapeError("synth: canvas must be at least 16 pixels");
  std::filesystem::create_directories(dir);

  DatasetManifest manifest;
  manifest.modality = spec.classes <= 10 ? Modality::digits : Modality::characters;
  for (std::size_t k = 0; k < spec.classes; ++k) {
    const StrokePrototype proto = class_prototype(spec.seed, k);
    Rng rng(derive_seed(spec.seed, k));
    const std::filesystem::path class_dir = dir / fmt::format("class_{}", k);
    std::filesystem::create_directories(class_dir);
    for (std::size_t i = 0; i < spec.per_class; ++i) {
      const std::filesystem::path file = class_dir / fmt::format("{:05}.pgm", i);
      write_pgm(file, render_glyph(proto, spec.canvas, rng));
      manifest.records.push_back({file, std::to_string(k)});
    }
  }
  const std::filesystem::path manifest_path = dir / "manifest.csv";
  save_manifest(manifest_path, manifest);
  return manifest_path;
}

}  // namespace hullglyph
