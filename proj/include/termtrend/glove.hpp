#pragma once

// GloVe weighted least-squares fit of word/context dot products to
// log co-occurrence, trained with per-parameter AdaGrad.

#include <cstddef>
#include <span>
#include <vector>

#include "termtrend/cooccurrence.hpp"
#include "termtrend/random.hpp"
#include "termtrend/trainer_config.hpp"

namespace termtrend {

struct GloveState {
  std::size_t vocab_size = 0;
  std::size_t dim = 0;
  std::vector<double> word;     // vocab_size x dim, row-major
  std::vector<double> context;  // vocab_size x dim, row-major
  std::vector<double> word_bias;
  std::vector<double> context_bias;
  // AdaGrad accumulators, one per parameter, starting at 1.
  std::vector<double> word_gradsq;
  std::vector<double> context_gradsq;
  std::vector<double> word_bias_gradsq;
  std::vector<double> context_bias_gradsq;
  Rng rng{0};

  std::span<double> word_row(std::size_t i) { return {word.data() + i * dim, dim}; }
  std::span<const double> word_row(std::size_t i) const { return {word.data() + i * dim, dim}; }
  std::span<double> context_row(std::size_t i) { return {context.data() + i * dim, dim}; }
  std::span<const double> context_row(std::size_t i) const {
    return {context.data() + i * dim, dim};
  }
};

// Vectors and biases uniform in [-0.5/dim, 0.5/dim] from config.seed.
GloveState init_glove_state(std::size_t vocab_size, const TrainerConfig& config);

// f(x) = (x / x_max)^alpha below x_max, 1 otherwise.
double glove_weight(double x, double x_max, double alpha);

// Per-entry objective f(x) (w_i . c_j + b_i + c_j' - ln x)^2.
double glove_entry_loss(const GloveState& state, std::size_t row, std::size_t col, double x,
                        const TrainerConfig& config);

struct GloveGradient {
  std::span<double> word;     // d/dw_i, size dim
  std::span<double> context;  // d/dc_j, size dim
  double word_bias = 0.0;
  double context_bias = 0.0;
};

// Writes the analytic gradient of glove_entry_loss into `grad` and returns
// the entry loss. This is the kernel glove_epoch applies.
double glove_entry_gradient(const GloveState& state, std::size_t row, std::size_t col,
                            double x, const TrainerConfig& config, GloveGradient& grad);

// One AdaGrad pass over every table entry in a freshly shuffled order.
// Returns the summed weighted squared error, each term taken before its update.
double glove_epoch(GloveState& state, const CooccurrenceTable& table,
                   const TrainerConfig& config);

// Final embedding rows: word + context vectors.
std::vector<float> glove_vectors(const GloveState& state);

}  // namespace termtrend
