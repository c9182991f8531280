#include "termtrend/glove.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "termtrend/error.hpp"

namespace termtrend {

GloveState init_glove_state(std::size_t vocab_size, const TrainerConfig& config) {
  GloveState s;
  s.vocab_size = vocab_size;
  s.dim = static_cast<std::size_t>(config.dim);
  s.rng = Rng(config.seed);
  const double bound = 0.5 / static_cast<double>(config.dim);
  auto fill = [&](std::vector<double>& v, std::size_t n) {
    v.resize(n);
    for (auto& x : v) x = s.rng.uniform(-bound, bound);
  };
  fill(s.word, vocab_size * s.dim);
  fill(s.context, vocab_size * s.dim);
  fill(s.word_bias, vocab_size);
  fill(s.context_bias, vocab_size);
  s.word_gradsq.assign(vocab_size * s.dim, 1.0);
  s.context_gradsq.assign(vocab_size * s.dim, 1.0);
  s.word_bias_gradsq.assign(vocab_size, 1.0);
  s.context_bias_gradsq.assign(vocab_size, 1.0);
  return s;
}

double glove_weight(double x, double x_max, double alpha) {
  return x < x_max ? std::pow(x / x_max, alpha) : 1.0;
}

namespace {

double residual(const GloveState& s, std::size_t row, std::size_t col, double x) {
  auto w = s.word_row(row);
  auto c = s.context_row(col);
  const double dot = std::inner_product(w.begin(), w.end(), c.begin(), 0.0);
  return dot + s.word_bias[row] + s.context_bias[col] - std::log(x);
}

}  // namespace

double glove_entry_loss(const GloveState& state, std::size_t row, std::size_t col, double x,
                        const TrainerConfig& config) {
  const double diff = residual(state, row, col, x);
  return glove_weight(x, config.x_max, config.alpha) * diff * diff;
}

double glove_entry_gradient(const GloveState& state, std::size_t row, std::size_t col,
                            double x, const TrainerConfig& config, GloveGradient& grad) {
  const double diff = residual(state, row, col, x);
  const double f = glove_weight(x, config.x_max, config.alpha);
  const double scale = 2.0 * f * diff;
  auto w = state.word_row(row);
  auto c = state.context_row(col);
  for (std::size_t k = 0; k < state.dim; ++k) {
    grad.word[k] = scale * c[k];
    grad.context[k] = scale * w[k];
  }
  grad.word_bias = scale;
  grad.context_bias = scale;
  return f * diff * diff;
}

double glove_epoch(GloveState& state, const CooccurrenceTable& table,
                   const TrainerConfig& config) {
  const auto& entries = table.entries();
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  state.rng.shuffle(std::span(order));

  const std::size_t dim = state.dim;
  const double eta = config.learning_rate;
  std::vector<double> gw(dim), gc(dim);
  GloveGradient grad{gw, gc};
  double total = 0.0;
  for (std::size_t idx : order) {
    const auto& e = entries[idx];
    const double loss = glove_entry_gradient(state, e.row, e.col, e.weight, config, grad);
    if (!std::isfinite(loss)) {
      std::ostringstream msg;
      msg << "non-finite GloVe loss at co-occurrence entry (row=" << e.row
          << ", col=" << e.col << ", x=" << e.weight << ")";
      throw NumericalError(msg.str());
    }
    total += loss;

    double* w = state.word.data() + e.row * dim;
    double* c = state.context.data() + e.col * dim;
    double* hw = state.word_gradsq.data() + e.row * dim;
    double* hc = state.context_gradsq.data() + e.col * dim;
    for (std::size_t k = 0; k < dim; ++k) {
      w[k] -= eta * gw[k] / std::sqrt(hw[k]);
      c[k] -= eta * gc[k] / std::sqrt(hc[k]);
      hw[k] += gw[k] * gw[k];
      hc[k] += gc[k] * gc[k];
    }
    state.word_bias[e.row] -= eta * grad.word_bias / std::sqrt(state.word_bias_gradsq[e.row]);
    state.context_bias[e.col] -=
        eta * grad.context_bias / std::sqrt(state.context_bias_gradsq[e.col]);
    state.word_bias_gradsq[e.row] += grad.word_bias * grad.word_bias;
    state.context_bias_gradsq[e.col] += grad.context_bias * grad.context_bias;
  }
  return total;
}

std::vector<float> glove_vectors(const GloveState& state) {
  std::vector<float> out(state.word.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<float>(state.word[i] + state.context[i]);
  }
  return out;
}

}  // namespace termtrend
