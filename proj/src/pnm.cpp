#include "hullglyph/error.hpp"
#include "hullglyph/imaging.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace hullglyph {
namespace {

class PnmReader {
public:
  explicit PnmReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  // Header tokens may be separated by whitespace and '#' comments.
  int read_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw ImageFormatError("pnm: expected an integer in header");
    }
    long long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > (1 << 24)) throw ImageFormatError("pnm: header value out of range");
      ++pos_;
    }
    return static_cast<int>(v);
  }

  // P1 allows pixels without separating whitespace.
  int read_bit() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) throw ImageFormatError("pnm: truncated bitmap data");
    const auto c = bytes_[pos_++];
    if (c != '0' && c != '1') throw ImageFormatError("pnm: invalid bitmap digit");
    return c - '0';
  }

  // Exactly one whitespace byte separates the header from raster data.
  void end_header() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw ImageFormatError("pnm: missing whitespace after header");
    }
    ++pos_;
  }

  std::uint8_t read_byte() {
    if (pos_ >= bytes_.size()) throw ImageFormatError("pnm: truncated raster data");
    return bytes_[pos_++];
  }

private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 2;
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageFormatError("cannot open image");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageFormatError("cannot write image " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

GrayImage gray_from_bits(const BinaryImage& bits) {
  GrayImage g(bits.width(), bits.height(), 255);
  for (int r = 0; r < bits.height(); ++r) {
    for (int c = 0; c < bits.width(); ++c) {
      if (bits.at(c, r)) g.set(c, r, 0);
    }
  }
  return g;
}

}  // namespace

PnmImage parse_pnm(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw ImageFormatError("pnm: missing magic number");
  const char kind = static_cast<char>(bytes[1]);
  if (kind != '1' && kind != '2' && kind != '4' && kind != '5') {
    throw ImageFormatError(std::string("pnm: unsupported format P") + kind);
  }

  PnmReader in(bytes);
  const int width = in.read_int();
  const int height = in.read_int();
  if (width <= 0 || height <= 0) throw ImageFormatError("pnm: dimensions must be positive");

  if (kind == '1' || kind == '4') {
    BinaryImage bits(width, height);
    if (kind == '1') {
      for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) bits.set(c, r, in.read_bit() == 1);
      }
    } else {
      in.end_header();
      for (int r = 0; r < height; ++r) {
        std::uint8_t byte = 0;
        for (int c = 0; c < width; ++c) {
          if (c % 8 == 0) byte = in.read_byte();
          bits.set(c, r, ((byte >> (7 - c % 8)) & 1) != 0);
        }
      }
    }
    GrayImage gray = gray_from_bits(bits);
    return {std::move(gray), std::move(bits)};
  }

  const int maxval = in.read_int();
  if (maxval <= 0 || maxval > 255) throw ImageFormatError("pnm: maxval must be in 1..255");
  if (kind == '5') in.end_header();

  std::vector<std::uint8_t> data(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (auto& px : data) {
    const int v = kind == '2' ? in.read_int() : in.read_byte();
    if (v > maxval) throw ImageFormatError("pnm: sample exceeds maxval");
    px = static_cast<std::uint8_t>(maxval == 255 ? v : (v * 255 + maxval / 2) / maxval);
  }
  return {GrayImage(width, height, std::move(data)), std::nullopt};
}

PnmImage read_pnm(const std::filesystem::path& path) {
  try {
    return parse_pnm(read_file(path));
  } catch (const ImageFormatError& e) {
    throw ImageFormatError(path.string() + ": " + e.what());
  }
}

BinaryImage load_binary(const std::filesystem::path& path, Threshold method) {
  PnmImage img = read_pnm(path);
  if (img.bits) return std::move(*img.bits);
  return binarize(img.gray, method);
}

std::vector<std::uint8_t> encode_pbm(const BinaryImage& img) {
  const std::string header = "P4\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const int row_bytes = (img.width() + 7) / 8;
  for (int r = 0; r < img.height(); ++r) {
    for (int b = 0; b < row_bytes; ++b) {
      std::uint8_t byte = 0;
      for (int k = 0; k < 8; ++k) {
        const int c = b * 8 + k;
        if (c < img.width() && img.at(c, r)) byte |= static_cast<std::uint8_t>(0x80 >> k);
      }
      out.push_back(byte);
    }
  }
  return out;
}

void write_pbm(const std::filesystem::path& path, const BinaryImage& img) {
  write_file(path, encode_pbm(img));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
  const std::string header = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.data().begin(), img.data().end());
  return out;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  write_file(path, encode_pgm(img));
}

}  // namespace hullglyph
