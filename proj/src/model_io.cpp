#include "hullglyph/classifier.hpp"
#include "hullglyph/error.hpp"

#include <fmt/format.h>

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hullglyph {
namespace {

constexpr const char* kMagic = "hullglyph-mlp v1";

void write_row(std::ostream& out, std::span<const double> values) {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) line += ' ';
    line += fmt::format("{:.17g}", values[i]);
  }
  line += '\n';
  out << line;
}

class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(const char* what) {
    std::string line;
    if (!std::getline(in_, line)) throw ModelFormatError(fmt::format("model: missing {} (line {})", what, number_ + 1));
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  std::vector<double> numbers(std::size_t expected, const char* what) {
    const std::string line = next(what);
    std::vector<double> out;
    out.reserve(expected);
    const char* p = line.c_str();
    for (;;) {
      while (*p == ' ' || *p == '\t') ++p;
      if (*p == '\0') break;
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(p, &end);
      if (end == p || errno == ERANGE) {
        throw ModelFormatError(fmt::format("model: bad number in {} (line {})", what, number_));
      }
      out.push_back(v);
      p = end;
    }
    if (out.size() != expected) {
      throw ModelFormatError(
          fmt::format("model: {} has {} values, expected {} (line {})", what, out.size(), expected, number_));
    }
    return out;
  }

private:
  std::istream& in_;
  std::size_t number_ = 0;
};

}  // namespace

void save_model(std::ostream& out, const MlpModel& model) {
  out << kMagic << '\n';
  out << model.n_in << ' ' << model.n_hidden << ' ' << model.n_out << '\n';
  for (std::size_t k = 0; k < model.labels.size(); ++k) {
    const std::string& l = model.labels[k];
    if (l.empty() || l.find_first_of(" \t\r\n") != std::string::npos) {
      throw ModelFormatError("model: class labels must be non-empty and contain no whitespace");
    }
    out << (k > 0 ? " " : "") << l;
  }
  out << '\n';
  for (std::size_t j = 0; j < model.n_hidden; ++j) write_row(out, model.hidden.row(j));
  for (std::size_t k = 0; k < model.n_out; ++k) write_row(out, model.output.row(k));
  write_row(out, model.scaler.min);
  write_row(out, model.scaler.max);
}

void save_model(const std::filesystem::path& path, const MlpModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelFormatError("cannot write model " + path.string());
  save_model(out, model);
}

MlpModel load_model(std::istream& in) {
  LineReader reader(in);
  if (reader.next("header") != kMagic) throw ModelFormatError("model: unrecognized header (expected 'hullglyph-mlp v1')");

  std::istringstream dims(reader.next("dimensions"));
  long long n_in = 0;
  long long n_hidden = 0;
  long long n_out = 0;
  if (!(dims >> n_in >> n_hidden >> n_out) || n_in <= 0 || n_hidden <= 0 || n_out <= 0) {
    throw ModelFormatError("model: invalid dimensions line");
  }

  std::istringstream label_line(reader.next("labels"));
  std::vector<std::string> labels;
  for (std::string l; label_line >> l;) labels.push_back(l);
  if (labels.size() != static_cast<std::size_t>(n_out)) throw ModelFormatError("model: label count does not match n_out");

  MlpModel m;
  try {
    m = init_model(static_cast<std::size_t>(n_in), static_cast<std::size_t>(n_hidden), labels, 0);
  } catch (const ShapeError& e) {
    throw ModelFormatError(std::string("model: ") + e.what());
  }
  for (std::size_t j = 0; j < m.n_hidden; ++j) {
    const auto row = reader.numbers(m.n_in + 1, "hidden weight row");
    std::copy(row.begin(), row.end(), m.hidden.row(j).begin());
  }
  for (std::size_t k = 0; k < m.n_out; ++k) {
    const auto row = reader.numbers(m.n_hidden + 1, "output weight row");
    std::copy(row.begin(), row.end(), m.output.row(k).begin());
  }
  m.scaler.min = reader.numbers(m.n_in, "scaler minimum");
  m.scaler.max = reader.numbers(m.n_in, "scaler maximum");
  return m;
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFormatError("cannot open model " + path.string());
  return load_model(in);
}

}  // namespace hullglyph
