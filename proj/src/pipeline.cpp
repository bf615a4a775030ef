#include "hullglyph/error.hpp"
#include "hullglyph/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <thread>

namespace hullglyph {
namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

unsigned configured_threads() {
  if (const char* env = std::getenv("HULLGLYPH_THREADS")) {
    unsigned v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

FeatureVector glyph_features(const BinaryImage& img, Modality modality) {
  return extract_features(normalize_cg(img, normalization_for(modality)));
}

BuildResult build_features(const DatasetManifest& manifest, const BuildOptions& options) {
  const std::size_t n = manifest.records.size();
  std::vector<std::optional<FeatureVector>> vectors(n);
  std::vector<std::string> errors(n);

  parallel_for(n, options.threads, [&](std::size_t i) {
    const ManifestRecord& rec = manifest.records[i];
    try {
      vectors[i] = glyph_features(load_binary(rec.path, options.threshold), manifest.modality);
    } catch (const Error& e) {
      errors[i] = fmt::format("{}: {}", rec.path.string(), e.what());
    }
  });

  BuildResult out;
  for (std::size_t i = 0; i < n; ++i) {
    if (vectors[i]) {
      out.table.labels.push_back(manifest.records[i].label);
      out.table.rows.emplace_back(vectors[i]->begin(), vectors[i]->end());
    } else {
      std::cerr << "warning: skipping " << errors[i] << '\n';
      out.failures.push_back(std::move(errors[i]));
    }
  }
  return out;
}

std::vector<LabeledSample> labeled_samples(const MlpModel& model, const FeatureTable& table) {
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t k = 0; k < model.labels.size(); ++k) index.emplace(model.labels[k], k);

  std::vector<LabeledSample> out;
  out.reserve(table.size());
  for (std::size_t r = 0; r < table.size(); ++r) {
    const auto it = index.find(table.labels[r]);
    if (it == index.end()) throw ShapeError(fmt::format("label '{}' is not in the model's class table", table.labels[r]));
    out.push_back({model.scaler.transform(table.rows[r]), it->second});
  }
  return out;
}

TrainedClassifier train_classifier(const FeatureTable& train, std::size_t n_hidden, const TrainConfig& cfg) {
  if (train.size() == 0) throw EmptyDataset("train_classifier: empty training table");
  TrainedClassifier out;
  out.model = init_model(train.rows.front().size(), n_hidden, label_table(train.labels), derive_seed(cfg.seed, 1));
  out.model.scaler = MinMaxScaler::fit(train.rows);

  std::vector<Example> examples;
  examples.reserve(train.size());
  for (const LabeledSample& s : labeled_samples(out.model, train)) {
    examples.push_back({s.features, one_hot(s.label, out.model.n_out)});
  }
  out.loss_trace = hullglyph::train(out.model, examples, cfg);
  return out;
}

std::size_t best_row(std::span<const SweepRow> rows) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const bool better = rows[i].test_success > rows[best].test_success ||
                        (rows[i].test_success == rows[best].test_success && rows[i].n_hidden < rows[best].n_hidden);
    if (better) best = i;
  }
  return best;
}

SweepReport sweep(const FeatureTable& train, const FeatureTable& test, std::span<const std::size_t> hidden_counts,
                  const TrainConfig& cfg, unsigned threads) {
  if (hidden_counts.empty()) throw ShapeError("sweep: no hidden-neuron counts");
  if (test.size() == 0) throw EmptyDataset("sweep: empty test table");

  std::vector<std::size_t> counts(hidden_counts.begin(), hidden_counts.end());
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());

  SweepReport report;
  report.rows.resize(counts.size());
  parallel_for(counts.size(), threads, [&](std::size_t i) {
    const TrainedClassifier tc = train_classifier(train, counts[i], cfg);
    report.rows[i] = {counts[i], evaluate(tc.model, labeled_samples(tc.model, train)).success_rate,
                      evaluate(tc.model, labeled_samples(tc.model, test)).success_rate};
  });
  report.best = best_row(report.rows);
  return report;
}

void SweepReport::write_csv(std::ostream& out) const {
  out << "n_hidden,train_success,test_success,best\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << fmt::format("{},{:.4f},{:.4f},{}\n", rows[i].n_hidden, rows[i].train_success, rows[i].test_success,
                       i == best ? 1 : 0);
  }
}

void SweepReport::write_plot_data(std::ostream& out) const {
  out << "n_hidden,test_success\n";
  for (const SweepRow& r : rows) out << fmt::format("{},{:.4f}\n", r.n_hidden, r.test_success);
}

std::string SweepReport::table() const {
  std::string s = "No. of Hidden Neurons  % Success (train)  % Success (test)\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s += fmt::format("{:>21}  {:>17.2f}  {:>16.2f}{}\n", rows[i].n_hidden, rows[i].train_success,
                     rows[i].test_success, i == best ? "  <- best" : "");
  }
  return s;
}

std::vector<std::size_t> parse_hidden_counts(std::string_view spec) {
  const auto parse = [&](std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
      throw ShapeError(fmt::format("invalid hidden-neuron count '{}' in '{}'", s, spec));
    }
    return v;
  };

  std::vector<std::size_t> out;
  if (spec.find(':') != std::string_view::npos) {
    std::vector<std::size_t> parts;
    std::size_t start = 0;
    for (;;) {
      const std::size_t pos = spec.find(':', start);
      parts.push_back(parse(spec.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    if (parts.size() < 2 || parts.size() > 3 || parts[0] > parts[1]) {
      throw ShapeError(fmt::format("invalid hidden range '{}' (expected lo:hi[:step])", spec));
    }
    const std::size_t step = parts.size() == 3 ? parts[2] : 1;
    for (std::size_t v = parts[0]; v <= parts[1]; v += step) out.push_back(v);
  } else {
    std::size_t start = 0;
    for (;;) {
      const std::size_t pos = spec.find(',', start);
      out.push_back(parse(spec.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  }
  return out;
}

}  // namespace hullglyph
