#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hullglyph {

// Row-major dense matrix.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Per-feature min-max scaling to [0, 1], fitted on training data. Values
// outside the fitted range are clamped; constant features map to 0.
struct MinMaxScaler {
  std::vector<double> min;
  std::vector<double> max;

  static MinMaxScaler identity(std::size_t n);
  static MinMaxScaler fit(std::span<const std::vector<double>> rows);

  std::vector<double> transform(std::span<const double> x) const;

  friend bool operator==(const MinMaxScaler&, const MinMaxScaler&) = default;
};

// One hidden layer, logistic units on both layers. Each weight row carries its
// bias as the last column.
struct MlpModel {
  std::size_t n_in = 0;
  std::size_t n_hidden = 0;
  std::size_t n_out = 0;
  Matrix hidden;           // n_hidden x (n_in + 1)
  Matrix output;           // n_out x (n_hidden + 1)
  Matrix hidden_velocity;  // previous update, same shape as hidden
  Matrix output_velocity;
  std::vector<std::string> labels;  // class index -> name
  MinMaxScaler scaler;
};

inline constexpr std::size_t kDefaultInputs = 125;

// Weights uniform in [-0.5, 0.5] from a seeded generator, velocities zero,
// identity scaler. Throws ShapeError for zero-sized layers or duplicate labels.
MlpModel init_model(std::size_t n_in, std::size_t n_hidden, std::vector<std::string> labels, std::uint64_t seed);

// Labels "0".."n_out-1" and 125 inputs.
MlpModel init_model(std::size_t n_hidden, std::size_t n_out, std::uint64_t seed);

struct Activations {
  std::vector<double> hidden;
  std::vector<double> output;
};

double sigmoid(double z);

// Throws ShapeError when x does not have n_in values.
Activations forward(const MlpModel& model, std::span<const double> x);

struct Example {
  std::vector<double> input;
  std::vector<double> target;
};

std::vector<double> one_hot(std::size_t index, std::size_t n);

// Squared error 0.5 * sum (target - output)^2 of one example.
double example_error(const MlpModel& model, const Example& ex);

// dE/dw of example_error for every weight, in the shapes of the model's
// weight matrices.
struct Gradients {
  Matrix hidden;
  Matrix output;
};

Gradients gradient(const MlpModel& model, const Example& ex);

struct TrainConfig {
  double learning_rate = 0.8;
  double momentum = 0.7;
  int epochs = 100;
  std::uint64_t seed = 1;
  bool shuffle = true;
};

// Online backpropagation: after each example every weight moves by
// v = -learning_rate * dE/dw + momentum * v_prev. Returns the mean squared
// error over all examples and outputs, measured after each epoch. Throws
// EmptyDataset for no examples and ShapeError for bad dimensions or config.
std::vector<double> train(MlpModel& model, std::span<const Example> examples, const TrainConfig& cfg);

// Mean over examples and outputs of (target - output)^2.
double mean_squared_error(const MlpModel& model, std::span<const Example> examples);

// Index of the largest output; the lowest index wins ties.
std::size_t argmax(std::span<const double> values);
std::size_t predict(const MlpModel& model, std::span<const double> x);

struct LabeledSample {
  std::vector<double> features;
  std::size_t label = 0;
};

struct EvalReport {
  std::size_t count = 0;
  std::size_t correct = 0;
  double success_rate = 0.0;  // percent
  Matrix confusion;           // rows: true class, cols: predicted class
};

// Throws EmptyDataset for no samples.
EvalReport evaluate(const MlpModel& model, std::span<const LabeledSample> samples);

// Text model format, see README. Weights are written with 17 significant
// digits, so loading reproduces them exactly. Velocities are not stored.
void save_model(std::ostream& out, const MlpModel& model);
void save_model(const std::filesystem::path& path, const MlpModel& model);
MlpModel load_model(std::istream& in);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace hullglyph
