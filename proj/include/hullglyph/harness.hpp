#pragma once

#include "hullglyph/classifier.hpp"
#include "hullglyph/features.hpp"
#include "hullglyph/imaging.hpp"
#include "hullglyph/random.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hullglyph {

enum class Modality { digits, characters };

Modality parse_modality(std::string_view name);  // "digits" | "chars" | "characters"
const char* to_string(Modality m);
NormalizationSpec normalization_for(Modality m);  // 32x32 digits, 64x64 characters
std::vector<std::string> class_labels(Modality m);  // "0".."9" or "0".."49"

struct ManifestRecord {
  std::filesystem::path path;  // resolved against the manifest's directory
  std::string label;
};

struct DatasetManifest {
  Modality modality = Modality::digits;
  std::vector<ManifestRecord> records;
};

// CSV with header `path,label`. Throws ManifestError naming the 1-based file
// line for missing images, unknown labels or malformed rows.
DatasetManifest load_manifest(const std::filesystem::path& path, Modality modality);
void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Per-class stratified split: a class of n items sends floor(n * (1 - f))
// to test and the rest to train. Index lists come back sorted. Throws
// SplitError for fractions outside (0, 1), classes with fewer than two items
// and classes that would leave either side empty.
SplitIndices stratified_split(std::span<const std::string> labels, double train_fraction, std::uint64_t seed);

std::pair<DatasetManifest, DatasetManifest> split(const DatasetManifest& manifest, double train_fraction,
                                                  std::uint64_t seed);

// In-memory form of the feature CSV (`label,f0..f124`).
struct FeatureTable {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;

  std::size_t size() const { return rows.size(); }
  FeatureTable subset(std::span<const std::size_t> indices) const;
};

void write_feature_csv(std::ostream& out, const FeatureTable& table);
void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table);
FeatureTable read_feature_csv(std::istream& in);
FeatureTable read_feature_csv(const std::filesystem::path& path);

// binarize -> normalize_cg -> extract_features for one image.
FeatureVector glyph_features(const BinaryImage& img, Modality modality);

struct BuildOptions {
  Threshold threshold = Threshold::otsu();
  unsigned threads = 1;
};

struct BuildResult {
  FeatureTable table;                 // manifest order, failures omitted
  std::vector<std::string> failures;  // "path: reason"
};

// Images that fail to load or have no ink are logged to stderr and skipped.
BuildResult build_features(const DatasetManifest& manifest, const BuildOptions& options = {});

// HULLGLYPH_THREADS when set to a positive integer, otherwise the hardware
// concurrency (at least 1).
unsigned configured_threads();

// Sorted distinct labels; numeric labels sort by value.
std::vector<std::string> label_table(std::span<const std::string> labels);

// Maps table rows to class indices and applies the model's scaler. Throws
// ShapeError for labels missing from the model.
std::vector<LabeledSample> labeled_samples(const MlpModel& model, const FeatureTable& table);

// Fits a scaler on `train`, initializes a fresh model and trains it. The
// model's class table is label_table(train.labels).
struct TrainedClassifier {
  MlpModel model;
  std::vector<double> loss_trace;
};

TrainedClassifier train_classifier(const FeatureTable& train, std::size_t n_hidden, const TrainConfig& cfg);

struct SweepRow {
  std::size_t n_hidden = 0;
  double train_success = 0.0;
  double test_success = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;  // ascending n_hidden
  std::size_t best = 0;        // index of the row with the highest test success, smaller n_hidden on ties

  void write_csv(std::ostream& out) const;
  void write_plot_data(std::ostream& out) const;
  std::string table() const;
};

// Marks the best row of an already-sorted row list.
std::size_t best_row(std::span<const SweepRow> rows);

// One independent train + evaluate per hidden count.
SweepReport sweep(const FeatureTable& train, const FeatureTable& test, std::span<const std::size_t> hidden_counts,
                  const TrainConfig& cfg, unsigned threads = 1);

// "20:65:5" (inclusive range with step) or "20,40,60".
std::vector<std::size_t> parse_hidden_counts(std::string_view spec);

// Seeded synthetic glyph corpus: every class is a random stroke prototype and
// every sample a jittered, rescaled rendering of it on a noisy gray canvas.
struct SynthSpec {
  std::size_t classes = 10;
  std::size_t per_class = 100;
  std::uint64_t seed = 1;
  int canvas = 48;
};

struct StrokePrototype {
  std::vector<RealPoint> points;  // polyline in the unit square
  bool closed = false;
};

StrokePrototype class_prototype(std::uint64_t seed, std::size_t class_index);
GrayImage render_glyph(const StrokePrototype& proto, int canvas, Rng& rng);

// Writes class_<k>/<n>.pgm files and manifest.csv under `dir`; returns the
// manifest path.
std::filesystem::path write_synthetic_corpus(const std::filesystem::path& dir, const SynthSpec& spec);

}  // namespace hullglyph
