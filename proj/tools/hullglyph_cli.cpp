// hullglyph: command-line harness for the convex-hull glyph pipeline.

#include "hullglyph/deficiency.hpp"
#include "hullglyph/error.hpp"
#include "hullglyph/harness.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace hullglyph;

constexpr int kValidationExit = 2;

Threshold threshold_from(const std::optional<int>& fixed) {
  if (!fixed) return Threshold::otsu();
  if (*fixed < 0 || *fixed > 256) throw ShapeError("threshold must be in 0..256");
  return Threshold::fixed(*fixed);
}

void open_or_throw(std::ofstream& out, const std::string& path) {
  out.open(path, std::ios::binary);
  if (!out) throw FeatureFileError("cannot write " + path);
}

struct HullArgs {
  std::string image;
  std::optional<int> threshold;
  int size = 0;
};

void run_hull(const HullArgs& a) {
  BinaryImage img = load_binary(a.image, threshold_from(a.threshold));
  if (a.size > 0) img = normalize_cg(img, {a.size, 2});
  if (img.empty()) throw EmptyGlyph(a.image + ": no object pixel");

  const ConvexHull hull = convex_hull(object_points(img));
  const HullMask mask = rasterize_hull(hull, img.width(), img.height());
  const DeficiencyMap dmap = analyze_deficiency(img, mask);

  std::cout << fmt::format("image {}x{}, {} object pixels\n", img.width(), img.height(), img.object_count());
  std::cout << fmt::format("vertices ({}{}):", hull.size(), hull.degenerate() ? ", degenerate" : "");
  for (const Point p : hull.vertices()) std::cout << fmt::format(" ({},{})", p.col, p.row);
  std::cout << '\n';
  const Centroid c = centroid_or_vertex_mean(hull);
  std::cout << fmt::format("area {:.6g}\ncentroid ({:.6f}, {:.6f})\n", polygon_area(hull), c.x, c.y);
  std::cout << fmt::format("bays {}, lakes {}\n", dmap.bays().size(), dmap.lakes().size());
  std::cout << "legend: 1 hull boundary, 2 object, + bay, * lake, 0 background\n";
  std::cout << render_deficiency(dmap, mask);
}

struct FeaturesArgs {
  std::string manifest;
  std::string modality = "digits";
  std::string out;
  std::optional<int> threshold;
};

void run_features(const FeaturesArgs& a) {
  const DatasetManifest m = load_manifest(a.manifest, parse_modality(a.modality));
  const BuildResult r = build_features(m, {threshold_from(a.threshold), configured_threads()});
  write_feature_csv(std::filesystem::path(a.out), r.table);
  std::cerr << fmt::format("{} of {} images -> {} ({} skipped)\n", r.table.size(), m.records.size(), a.out,
                           r.failures.size());
}

struct SplitArgs {
  std::string manifest;
  std::string modality = "digits";
  double train_fraction = 0.8;
  std::uint64_t seed = 1;
  std::string train_out;
  std::string test_out;
};

void run_split(const SplitArgs& a) {
  const DatasetManifest m = load_manifest(a.manifest, parse_modality(a.modality));
  const auto [train, test] = split(m, a.train_fraction, a.seed);
  save_manifest(a.train_out, train);
  save_manifest(a.test_out, test);
  std::cerr << fmt::format("train {} -> {}, test {} -> {}\n", train.records.size(), a.train_out,
                           test.records.size(), a.test_out);
}

struct TrainArgs {
  std::string features;
  std::size_t hidden = 40;
  TrainConfig cfg;
  std::string out;
  std::string loss_out;
};

void run_train(const TrainArgs& a) {
  const FeatureTable table = read_feature_csv(std::filesystem::path(a.features));
  const TrainedClassifier tc = train_classifier(table, a.hidden, a.cfg);
  save_model(std::filesystem::path(a.out), tc.model);
  if (!a.loss_out.empty()) {
    std::ofstream loss;
    open_or_throw(loss, a.loss_out);
    loss << "epoch,mse\n";
    for (std::size_t e = 0; e < tc.loss_trace.size(); ++e) loss << fmt::format("{},{:.17g}\n", e + 1, tc.loss_trace[e]);
  }
  const EvalReport r = evaluate(tc.model, labeled_samples(tc.model, table));
  std::cerr << fmt::format("trained {}-{}-{} for {} epochs, final mse {:.6f}, train success {:.2f}%\n",
                           tc.model.n_in, tc.model.n_hidden, tc.model.n_out, a.cfg.epochs, tc.loss_trace.back(),
                           r.success_rate);
}

struct EvalArgs {
  std::string model;
  std::string features;
  bool confusion = false;
};

void run_eval(const EvalArgs& a) {
  const MlpModel model = load_model(std::filesystem::path(a.model));
  const FeatureTable table = read_feature_csv(std::filesystem::path(a.features));
  const EvalReport r = evaluate(model, labeled_samples(model, table));
  std::cout << fmt::format("samples {}\ncorrect {}\nsuccess_rate {:.2f}\n", r.count, r.correct, r.success_rate);
  if (a.confusion) {
    std::cout << "confusion (rows: true, cols: predicted)\n";
    for (std::size_t i = 0; i < model.n_out; ++i) {
      std::cout << fmt::format("{:>6}", model.labels[i]);
      for (std::size_t j = 0; j < model.n_out; ++j) std::cout << fmt::format(" {:>5}", r.confusion(i, j));
      std::cout << '\n';
    }
  }
}

struct SweepArgs {
  std::string features;
  std::string test;
  double train_fraction = 0.8;
  std::string hidden = "20:65:5";
  TrainConfig cfg;
  std::string out;
  std::string plot_data;
};

void run_sweep(const SweepArgs& a) {
  FeatureTable train = read_feature_csv(std::filesystem::path(a.features));
  FeatureTable test;
  if (!a.test.empty()) {
    test = read_feature_csv(std::filesystem::path(a.test));
  } else {
    const SplitIndices idx = stratified_split(train.labels, a.train_fraction, a.cfg.seed);
    test = train.subset(idx.test);
    train = train.subset(idx.train);
  }
  const auto counts = parse_hidden_counts(a.hidden);
  const SweepReport report = sweep(train, test, counts, a.cfg, configured_threads());
  std::cout << report.table();
  if (!a.out.empty()) {
    std::ofstream out;
    open_or_throw(out, a.out);
    report.write_csv(out);
  }
  if (!a.plot_data.empty()) {
    std::ofstream out;
    open_or_throw(out, a.plot_data);
    report.write_plot_data(out);
  }
}

void add_train_config(CLI::App* cmd, TrainConfig& cfg) {
  cmd->add_option("--eta", cfg.learning_rate, "Learning rate")->capture_default_str();
  cmd->add_option("--alpha", cfg.momentum, "Momentum term")->capture_default_str();
  cmd->add_option("--epochs", cfg.epochs, "Training epochs")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "Seed for initialization and shuffling")->capture_default_str();
  cmd->add_flag("!--no-shuffle", cfg.shuffle, "Keep the sample order fixed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex-hull bay features and MLP classification for isolated glyphs"};
  app.require_subcommand(1);

  HullArgs hull;
  auto* hull_cmd = app.add_subcommand("hull", "Print the convex hull, area, centroid and deficiency map of an image");
  hull_cmd->add_option("image", hull.image, "PGM/PBM image")->required();
  hull_cmd->add_option("--threshold", hull.threshold, "Fixed binarization threshold (default: Otsu)");
  hull_cmd->add_option("--size", hull.size, "Normalize to an N x N raster first");

  FeaturesArgs feats;
  auto* feat_cmd = app.add_subcommand("features", "Extract 125-value feature vectors for a manifest");
  feat_cmd->add_option("manifest", feats.manifest, "CSV manifest with header path,label")->required();
  feat_cmd->add_option("--modality", feats.modality, "digits (32x32) or chars (64x64)")->capture_default_str();
  feat_cmd->add_option("--out", feats.out, "Feature CSV to write")->required();
  feat_cmd->add_option("--threshold", feats.threshold, "Fixed binarization threshold (default: Otsu)");

  SplitArgs split_args;
  auto* split_cmd = app.add_subcommand("split", "Stratified train/test split of a manifest");
  split_cmd->add_option("manifest", split_args.manifest)->required();
  split_cmd->add_option("--modality", split_args.modality)->capture_default_str();
  split_cmd->add_option("--train-fraction", split_args.train_fraction)->capture_default_str();
  split_cmd->add_option("--seed", split_args.seed)->capture_default_str();
  split_cmd->add_option("--train-out", split_args.train_out)->required();
  split_cmd->add_option("--test-out", split_args.test_out)->required();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train an MLP on a feature CSV");
  train_cmd->add_option("--features", train.features, "Training feature CSV")->required();
  train_cmd->add_option("--hidden", train.hidden, "Hidden neurons")->capture_default_str()->check(CLI::PositiveNumber);
  add_train_config(train_cmd, train.cfg);
  train_cmd->add_option("--out", train.out, "Model file to write")->required();
  train_cmd->add_option("--loss-out", train.loss_out, "Per-epoch MSE trace (CSV)");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a feature CSV");
  eval_cmd->add_option("--model", eval.model)->required();
  eval_cmd->add_option("--features", eval.features)->required();
  eval_cmd->add_flag("--confusion", eval.confusion, "Print the confusion matrix");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Train and test one model per hidden-layer size");
  sweep_cmd->add_option("--features", sweep_args.features, "Feature CSV (training set, or everything with a split)")
      ->required();
  sweep_cmd->add_option("--test", sweep_args.test, "Separate test feature CSV; otherwise --features is split");
  sweep_cmd->add_option("--train-fraction", sweep_args.train_fraction)->capture_default_str();
  sweep_cmd->add_option("--hidden", sweep_args.hidden, "lo:hi:step or a comma list")->capture_default_str();
  add_train_config(sweep_cmd, sweep_args.cfg);
  sweep_cmd->add_option("--out", sweep_args.out, "Report CSV");
  sweep_cmd->add_option("--plot-data", sweep_args.plot_data, "n_hidden vs test success CSV");

  SynthSpec synth;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "Write a seeded synthetic glyph corpus with a manifest");
  synth_cmd->add_option("--classes", synth.classes)->capture_default_str()->check(CLI::Range(1, 50));
  synth_cmd->add_option("--per-class", synth.per_class)->capture_default_str()->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", synth.seed)->capture_default_str();
  synth_cmd->add_option("--canvas", synth.canvas, "Canvas side in pixels")->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidationExit;
  }

  try {
    if (*hull_cmd) run_hull(hull);
    if (*feat_cmd) run_features(feats);
    if (*split_cmd) run_split(split_args);
    if (*train_cmd) run_train(train);
    if (*eval_cmd) run_eval(eval);
    if (*sweep_cmd) run_sweep(sweep_args);
    if (*synth_cmd) {
      const auto manifest = write_synthetic_corpus(synth_out, synth);
      std::cerr << fmt::format("{} classes x {} glyphs -> {}\n", synth.classes, synth.per_class, manifest.string());
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationExit;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
