#pragma once

#include "hullglyph/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace hullglyph {

// 8-bit intensities, row-major. 0 is black.
class GrayImage {
public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 255);
  GrayImage(int width, int height, std::vector<std::uint8_t> intensities);

  int width() const { return width_; }
  int height() const { return height_; }

  std::uint8_t at(int col, int row) const { return data_[index(col, row)]; }
  void set(int col, int row, std::uint8_t v) { data_[index(col, row)] = v; }
  const std::vector<std::uint8_t>& data() const { return data_; }

private:
  std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// 1 = object (ink), 0 = background, row-major. Zero-sized images are legal
// (quadrant splits can produce them); everything else requires width, height > 0.
class BinaryImage {
public:
  BinaryImage() = default;
  BinaryImage(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  bool at(int col, int row) const { return bits_[index(col, row)] != 0; }
  void set(int col, int row, bool on);

  bool contains(int col, int row) const {
    return col >= 0 && row >= 0 && col < width_ && row < height_;
  }

  std::size_t object_count() const { return object_count_; }
  bool empty() const { return object_count_ == 0; }

  friend bool operator==(const BinaryImage& a, const BinaryImage& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.bits_ == b.bits_;
  }

private:
  std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
  std::size_t object_count_ = 0;
};

// Pixel is ink iff intensity < threshold.
struct Threshold {
  static Threshold fixed(int t) { return Threshold{t}; }
  static Threshold otsu() { return Threshold{std::nullopt}; }

  std::optional<int> value;
};

// Otsu's threshold t in [1, 255]: ink is intensity < t. Maximizes the
// between-class variance; the smallest t wins ties. Images with a single
// intensity level have no split and get 128.
int otsu_threshold(const GrayImage& img);

BinaryImage binarize(const GrayImage& img, Threshold method = Threshold::otsu());

struct NormalizationSpec {
  int target_size = 32;
  int margin = 2;

  static constexpr NormalizationSpec digits() { return {32, 2}; }
  static constexpr NormalizationSpec characters() { return {64, 2}; }
};

// Scales the object's bounding box (aspect preserved, nearest neighbour) so
// its longer side spans target_size - 2 * margin pixels, then translates it so
// its center of gravity lands on the raster center, clamped to the frame.
// Throws EmptyGlyph when the image has no object pixel and ShapeError for an
// invalid spec.
BinaryImage normalize_cg(const BinaryImage& img, NormalizationSpec spec = NormalizationSpec::digits());

// Coordinates of the 1-pixels in row-major order.
std::vector<Point> object_points(const BinaryImage& img);

// Mean (col, row) of the object pixels. Throws EmptyGlyph for an empty image.
Centroid center_of_gravity(const BinaryImage& img);

// PGM/PBM input. P2/P5 gray maps (maxval <= 255 is rescaled to 0..255) and
// P1/P4 bitmaps are accepted.
struct PnmImage {
  GrayImage gray;
  // Set when the file was a bitmap; `bits` then holds it verbatim.
  std::optional<BinaryImage> bits;
};

PnmImage read_pnm(const std::filesystem::path& path);
PnmImage parse_pnm(const std::vector<std::uint8_t>& bytes);

// Reads any supported file and returns ink pixels: bitmaps as stored, gray
// maps through binarize().
BinaryImage load_binary(const std::filesystem::path& path, Threshold method = Threshold::otsu());

// Raw PBM (P4).
std::vector<std::uint8_t> encode_pbm(const BinaryImage& img);
void write_pbm(const std::filesystem::path& path, const BinaryImage& img);

// Raw PGM (P5).
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);

}  // namespace hullglyph
