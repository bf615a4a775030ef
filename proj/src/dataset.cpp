#include "hullglyph/error.hpp"
#include "hullglyph/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace hullglyph {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool is_integer(std::string_view s) {
  return !s.empty() && s.size() < 18 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Modality parse_modality(std::string_view name) {
  if (name == "digits") return Modality::digits;
  if (name == "chars" || name == "characters") return Modality::characters;
  throw ManifestError(fmt::format("unknown modality '{}' (expected digits or chars)", name));
}

const char* to_string(Modality m) { return m == Modality::digits ? "digits" : "chars"; }

NormalizationSpec normalization_for(Modality m) {
  return m == Modality::digits ? NormalizationSpec::digits() : NormalizationSpec::characters();
}

std::vector<std::string> class_labels(Modality m) {
  const int n = m == Modality::digits ? 10 : 50;
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

DatasetManifest load_manifest(const std::filesystem::path& path, Modality modality) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open manifest " + path.string());

  const auto allowed_vec = class_labels(modality);
  const std::set<std::string, std::less<>> allowed(allowed_vec.begin(), allowed_vec.end());
  const std::filesystem::path base = path.parent_path();

  DatasetManifest m;
  m.modality = modality;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto fields = split_commas(text);
    if (!header_seen) {
      if (fields.size() != 2 || fields[0] != "path" || fields[1] != "label") {
        throw ManifestError(fmt::format("{}:{}: expected header 'path,label'", path.string(), line_no));
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 2 || fields[0].empty()) {
      throw ManifestError(fmt::format("{}:{}: expected 'path,label'", path.string(), line_no));
    }
    if (allowed.find(fields[1]) == allowed.end()) {
      throw ManifestError(fmt::format("{}:{}: label '{}' is not a {} class", path.string(), line_no, fields[1],
                                      to_string(modality)));
    }
    std::filesystem::path image(fields[0]);
    if (image.is_relative()) image = base / image;
    std::error_code ec;
    if (!std::filesystem::is_regular_file(image, ec)) {
      throw ManifestError(fmt::format("{}:{}: image '{}' does not exist", path.string(), line_no, image.string()));
    }
    m.records.push_back({std::move(image), std::string(fields[1])});
  }
  if (!header_seen) throw ManifestError(path.string() + ": empty manifest");
  return m;
}

void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ManifestError("cannot write manifest " + path.string());
  const std::filesystem::path base = path.parent_path();
  out << "path,label\n";
  for (const auto& r : manifest.records) {
    std::filesystem::path p = r.path;
    if (!base.empty()) {
      const auto rel = p.lexically_relative(base);
      if (!rel.empty() && *rel.begin() != "..") p = rel;
    }
    out << p.generic_string() << ',' << r.label << '\n';
  }
}

SplitIndices stratified_split(std::span<const std::string> labels, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw SplitError(fmt::format("train fraction {} leaves an empty partition", train_fraction));
  }
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  const auto classes = label_table(labels);
  SplitIndices out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto& items = by_class[classes[c]];
    const std::size_t n = items.size();
    if (n < 2) throw SplitError(fmt::format("class '{}' has {} sample(s); at least 2 required", classes[c], n));
    const auto n_test = static_cast<std::size_t>(std::floor(static_cast<double>(n) * (1.0 - train_fraction) + 1e-9));
    if (n_test == 0 || n_test == n) {
      throw SplitError(fmt::format("class '{}' with {} samples would leave an empty partition", classes[c], n));
    }
    Rng rng(derive_seed(seed, c));
    rng.shuffle(items);
    out.test.insert(out.test.end(), items.begin(), items.begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train.insert(out.train.end(), items.begin() + static_cast<std::ptrdiff_t>(n_test), items.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<DatasetManifest, DatasetManifest> split(const DatasetManifest& manifest, double train_fraction,
                                                  std::uint64_t seed) {
  std::vector<std::string> labels;
  labels.reserve(manifest.records.size());
  for (const auto& r : manifest.records) labels.push_back(r.label);
  const SplitIndices idx = stratified_split(labels, train_fraction, seed);

  DatasetManifest train{manifest.modality, {}};
  DatasetManifest test{manifest.modality, {}};
  for (const std::size_t i : idx.train) train.records.push_back(manifest.records[i]);
  for (const std::size_t i : idx.test) test.records.push_back(manifest.records[i]);
  return {std::move(train), std::move(test)};
}

std::vector<std::string> label_table(std::span<const std::string> labels) {
  std::vector<std::string> out(labels.begin(), labels.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (std::all_of(out.begin(), out.end(), [](const std::string& s) { return is_integer(s); })) {
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
      return std::stoll(a) != std::stoll(b) ? std::stoll(a) < std::stoll(b) : a < b;
    });
  }
  return out;
}

FeatureTable FeatureTable::subset(std::span<const std::size_t> indices) const {
  FeatureTable t;
  for (const std::size_t i : indices) {
    t.labels.push_back(labels.at(i));
    t.rows.push_back(rows.at(i));
  }
  return t;
}

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
  const std::size_t n = table.rows.empty() ? kFeatureCount : table.rows.front().size();
  std::string line = "label";
  for (std::size_t i = 0; i < n; ++i) line += fmt::format(",f{}", i);
  out << line << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != n) throw FeatureFileError("feature table has ragged rows");
    line = table.labels[r];
    for (const double v : table.rows[r]) line += fmt::format(",{:.17g}", v);
    out << line << '\n';
  }
}

void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FeatureFileError("cannot write " + path.string());
  write_feature_csv(out, table);
}

FeatureTable read_feature_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FeatureFileError("feature CSV: missing header");
  const auto header = split_commas(trim(line));
  if (header.empty() || header[0] != "label") throw FeatureFileError("feature CSV: header must start with 'label'");
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] != fmt::format("f{}", i - 1)) throw FeatureFileError("feature CSV: malformed header");
  }
  const std::size_t n = header.size() - 1;

  FeatureTable t;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto fields = split_commas(text);
    if (fields.size() != n + 1 || fields[0].empty()) {
      throw FeatureFileError(fmt::format("feature CSV line {}: expected {} fields", line_no, n + 1));
    }
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string field(fields[i + 1]);
      char* end = nullptr;
      errno = 0;
      row[i] = std::strtod(field.c_str(), &end);
      if (field.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(row[i])) {
        throw FeatureFileError(fmt::format("feature CSV line {}: bad value '{}'", line_no, field));
      }
    }
    t.labels.emplace_back(fields[0]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FeatureFileError("cannot open " + path.string());
  return read_feature_csv(in);
}

}  // namespace hullglyph
