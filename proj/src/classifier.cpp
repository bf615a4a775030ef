#include "hullglyph/classifier.hpp"

#include "hullglyph/error.hpp"
#include "hullglyph/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace hullglyph {

MinMaxScaler MinMaxScaler::identity(std::size_t n) {
  return {std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)};
}

MinMaxScaler MinMaxScaler::fit(std::span<const std::vector<double>> rows) {
  if (rows.empty()) throw EmptyDataset("MinMaxScaler::fit: no rows");
  MinMaxScaler s{rows.front(), rows.front()};
  for (const auto& r : rows) {
    if (r.size() != s.min.size()) throw ShapeError("MinMaxScaler::fit: ragged rows");
    for (std::size_t i = 0; i < r.size(); ++i) {
      s.min[i] = std::min(s.min[i], r[i]);
      s.max[i] = std::max(s.max[i], r[i]);
    }
  }
  return s;
}

std::vector<double> MinMaxScaler::transform(std::span<const double> x) const {
  if (x.size() != min.size()) throw ShapeError("MinMaxScaler::transform: dimension mismatch");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double range = max[i] - min[i];
    out[i] = range > 0.0 ? std::clamp((x[i] - min[i]) / range, 0.0, 1.0) : 0.0;
  }
  return out;
}

MlpModel init_model(std::size_t n_in, std::size_t n_hidden, std::vector<std::string> labels, std::uint64_t seed) {
  if (n_in == 0 || n_hidden == 0 || labels.empty()) throw ShapeError("init_model: layer sizes must be positive");
  if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
    throw ShapeError("init_model: duplicate class labels");
  }
  MlpModel m;
  m.n_in = n_in;
  m.n_hidden = n_hidden;
  m.n_out = labels.size();
  m.hidden = Matrix(n_hidden, n_in + 1);
  m.output = Matrix(m.n_out, n_hidden + 1);
  m.hidden_velocity = Matrix(n_hidden, n_in + 1);
  m.output_velocity = Matrix(m.n_out, n_hidden + 1);
  m.labels = std::move(labels);
  m.scaler = MinMaxScaler::identity(n_in);

  Rng rng(seed);
  for (double& w : m.hidden.data()) w = rng.uniform() - 0.5;
  for (double& w : m.output.data()) w = rng.uniform() - 0.5;
  return m;
}

MlpModel init_model(std::size_t n_hidden, std::size_t n_out, std::uint64_t seed) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n_out; ++i) labels.push_back(std::to_string(i));
  return init_model(kDefaultInputs, n_hidden, std::move(labels), seed);
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

namespace {

void check_input(const MlpModel& model, std::span<const double> x) {
  if (x.size() != model.n_in) {
    throw ShapeError("expected " + std::to_string(model.n_in) + " inputs, got " + std::to_string(x.size()));
  }
}

void check_example(const MlpModel& model, const Example& ex) {
  check_input(model, ex.input);
  if (ex.target.size() != model.n_out) {
    throw ShapeError("expected " + std::to_string(model.n_out) + " targets, got " + std::to_string(ex.target.size()));
  }
}

void forward_into(const MlpModel& m, std::span<const double> x, std::vector<double>& hidden, std::vector<double>& output) {
  hidden.resize(m.n_hidden);
  output.resize(m.n_out);
  for (std::size_t j = 0; j < m.n_hidden; ++j) {
    const auto w = m.hidden.row(j);
    double z = w[m.n_in];
    for (std::size_t i = 0; i < m.n_in; ++i) z += w[i] * x[i];
    hidden[j] = sigmoid(z);
  }
  for (std::size_t k = 0; k < m.n_out; ++k) {
    const auto w = m.output.row(k);
    double z = w[m.n_hidden];
    for (std::size_t j = 0; j < m.n_hidden; ++j) z += w[j] * hidden[j];
    output[k] = sigmoid(z);
  }
}

// Error terms dE/dz for both layers.
void backprop_deltas(const MlpModel& m, const std::vector<double>& hidden, const std::vector<double>& output,
                     std::span<const double> target, std::vector<double>& out_delta, std::vector<double>& hid_delta) {
  out_delta.resize(m.n_out);
  hid_delta.resize(m.n_hidden);
  for (std::size_t k = 0; k < m.n_out; ++k) {
    const double o = output[k];
    out_delta[k] = (o - target[k]) * o * (1.0 - o);
  }
  for (std::size_t j = 0; j < m.n_hidden; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m.n_out; ++k) s += out_delta[k] * m.output(k, j);
    hid_delta[j] = s * hidden[j] * (1.0 - hidden[j]);
  }
}

}  // namespace

Activations forward(const MlpModel& model, std::span<const double> x) {
  check_input(model, x);
  Activations a;
  forward_into(model, x, a.hidden, a.output);
  return a;
}

std::vector<double> one_hot(std::size_t index, std::size_t n) {
  if (index >= n) throw ShapeError("one_hot: index out of range");
  std::vector<double> v(n, 0.0);
  v[index] = 1.0;
  return v;
}

double example_error(const MlpModel& model, const Example& ex) {
  check_example(model, ex);
  const Activations a = forward(model, ex.input);
  double e = 0.0;
  for (std::size_t k = 0; k < model.n_out; ++k) {
    const double d = ex.target[k] - a.output[k];
    e += d * d;
  }
  return 0.5 * e;
}

Gradients gradient(const MlpModel& model, const Example& ex) {
  check_example(model, ex);
  std::vector<double> hidden;
  std::vector<double> output;
  std::vector<double> out_delta;
  std::vector<double> hid_delta;
  forward_into(model, ex.input, hidden, output);
  backprop_deltas(model, hidden, output, ex.target, out_delta, hid_delta);

  Gradients g{Matrix(model.n_hidden, model.n_in + 1), Matrix(model.n_out, model.n_hidden + 1)};
  for (std::size_t k = 0; k < model.n_out; ++k) {
    for (std::size_t j = 0; j < model.n_hidden; ++j) g.output(k, j) = out_delta[k] * hidden[j];
    g.output(k, model.n_hidden) = out_delta[k];
  }
  for (std::size_t j = 0; j < model.n_hidden; ++j) {
    for (std::size_t i = 0; i < model.n_in; ++i) g.hidden(j, i) = hid_delta[j] * ex.input[i];
    g.hidden(j, model.n_in) = hid_delta[j];
  }
  return g;
}

double mean_squared_error(const MlpModel& model, std::span<const Example> examples) {
  if (examples.empty()) throw EmptyDataset("mean_squared_error: no examples");
  std::vector<double> hidden;
  std::vector<double> output;
  double sum = 0.0;
  for (const Example& ex : examples) {
    check_example(model, ex);
    forward_into(model, ex.input, hidden, output);
    for (std::size_t k = 0; k < model.n_out; ++k) {
      const double d = ex.target[k] - output[k];
      sum += d * d;
    }
  }
  return sum / static_cast<double>(examples.size() * model.n_out);
}

std::vector<double> train(MlpModel& model, std::span<const Example> examples, const TrainConfig& cfg) {
  if (examples.empty()) throw EmptyDataset("train: no training examples");
  if (!(cfg.learning_rate > 0.0)) throw ShapeError("train: learning rate must be positive");
  if (!(cfg.momentum >= 0.0 && cfg.momentum < 1.0)) throw ShapeError("train: momentum must be in [0, 1)");
  if (cfg.epochs <= 0) throw ShapeError("train: epochs must be positive");
  for (const Example& ex : examples) check_example(model, ex);

  const std::size_t n_in = model.n_in;
  const std::size_t n_hidden = model.n_hidden;
  const double eta = cfg.learning_rate;
  const double alpha = cfg.momentum;

  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(cfg.seed);

  std::vector<double> hidden;
  std::vector<double> output;
  std::vector<double> out_delta;
  std::vector<double> hid_delta;
  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(cfg.epochs));

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (cfg.shuffle) rng.shuffle(order);
    for (const std::size_t idx : order) {
      const Example& ex = examples[idx];
      forward_into(model, ex.input, hidden, output);
      backprop_deltas(model, hidden, output, ex.target, out_delta, hid_delta);

      for (std::size_t k = 0; k < model.n_out; ++k) {
        auto w = model.output.row(k);
        auto v = model.output_velocity.row(k);
        for (std::size_t j = 0; j <= n_hidden; ++j) {
          const double g = out_delta[k] * (j < n_hidden ? hidden[j] : 1.0);
          v[j] = -eta * g + alpha * v[j];
          w[j] += v[j];
        }
      }
      for (std::size_t j = 0; j < n_hidden; ++j) {
        auto w = model.hidden.row(j);
        auto v = model.hidden_velocity.row(j);
        const double d = hid_delta[j];
        for (std::size_t i = 0; i < n_in; ++i) {
          v[i] = -eta * d * ex.input[i] + alpha * v[i];
          w[i] += v[i];
        }
        v[n_in] = -eta * d + alpha * v[n_in];
        w[n_in] += v[n_in];
      }
    }
    trace.push_back(mean_squared_error(model, examples));
  }
  return trace;
}

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw ShapeError("argmax: empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

std::size_t predict(const MlpModel& model, std::span<const double> x) {
  return argmax(forward(model, x).output);
}

EvalReport evaluate(const MlpModel& model, std::span<const LabeledSample> samples) {
  if (samples.empty()) throw EmptyDataset("evaluate: no samples");
  EvalReport r;
  r.count = samples.size();
  r.confusion = Matrix(model.n_out, model.n_out);
  for (const LabeledSample& s : samples) {
    if (s.label >= model.n_out) throw ShapeError("evaluate: label outside the model's class table");
    const std::size_t p = predict(model, s.features);
    r.confusion(s.label, p) += 1.0;
    if (p == s.label) ++r.correct;
  }
  r.success_rate = 100.0 * static_cast<double>(r.correct) / static_cast<double>(r.count);
  return r;
}

}  // namespace hullglyph
