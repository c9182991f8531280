#include "termtrend/sgns.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "termtrend/error.hpp"

namespace termtrend {
namespace {

double log_sigmoid(double x) {
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::vector<std::int64_t> to_ids(const Observation& obs, const Vocabulary& vocab) {
  std::vector<std::int64_t> ids;
  ids.reserve(obs.tokens.size());
  for (const auto& token : obs.tokens) {
    auto idx = vocab.find(token);
    ids.push_back(idx ? static_cast<std::int64_t>(*idx) : -1);
  }
  return ids;
}

}  // namespace

NegativeSampler::NegativeSampler(std::span<const double> counts, double power) {
  cumulative_.reserve(counts.size());
  double total = 0.0;
  for (double c : counts) {
    total += std::pow(c, power);
    cumulative_.push_back(total);
  }
  if (total <= 0.0) throw DataError("negative sampler needs a positive count");
  for (auto& c : cumulative_) c /= total;
  cumulative_.back() = 1.0;
}

std::size_t NegativeSampler::sample(Rng& rng) const {
  const double u = rng.uniform01();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<std::size_t>(
      std::min<std::ptrdiff_t>(it - cumulative_.begin(),
                               static_cast<std::ptrdiff_t>(cumulative_.size()) - 1));
}

double NegativeSampler::probability(std::size_t index) const {
  const double prev = index == 0 ? 0.0 : cumulative_.at(index - 1);
  return cumulative_.at(index) - prev;
}

std::vector<double> unigram_counts(const std::vector<Observation>& observations,
                                   const Vocabulary& vocab) {
  std::vector<double> counts(vocab.size(), 0.0);
  for (const auto& obs : observations) {
    for (const auto& token : obs.tokens) {
      if (auto idx = vocab.find(token)) counts[*idx] += 1.0;
    }
  }
  return counts;
}

std::size_t count_sgns_pairs(const std::vector<Observation>& observations,
                             const Vocabulary& vocab, int context_window) {
  std::size_t pairs = 0;
  for (const auto& obs : observations) {
    const auto ids = to_ids(obs, vocab);
    const auto n = static_cast<std::ptrdiff_t>(ids.size());
    for (std::ptrdiff_t p = 0; p < n; ++p) {
      if (ids[p] < 0) continue;
      for (std::ptrdiff_t q = std::max<std::ptrdiff_t>(0, p - context_window);
           q <= std::min(n - 1, p + context_window); ++q) {
        if (q != p && ids[q] >= 0) ++pairs;
      }
    }
  }
  return pairs;
}

SgnsState init_sgns_state(const std::vector<Observation>& observations, const Vocabulary& vocab,
                          const TrainerConfig& config) {
  SgnsState s;
  s.vocab_size = vocab.size();
  s.dim = static_cast<std::size_t>(config.dim);
  s.rng = Rng(config.seed);
  const double bound = 0.5 / static_cast<double>(config.dim);
  s.input.resize(s.vocab_size * s.dim);
  for (auto& x : s.input) x = s.rng.uniform(-bound, bound);
  s.output.assign(s.vocab_size * s.dim, 0.0);
  const auto counts = unigram_counts(observations, vocab);
  s.sampler = NegativeSampler(counts, 0.75);
  return s;
}

double sgns_epoch(SgnsState& state, const std::vector<Observation>& observations,
                  const Vocabulary& vocab, const TrainerConfig& config) {
  const std::size_t dim = state.dim;
  const double eta = config.learning_rate;
  std::vector<double> center_grad(dim);
  double total = 0.0;

  auto step = [&](double* center, std::size_t target, double label) {
    double* out = state.output.data() + target * dim;
    double score = 0.0;
    for (std::size_t k = 0; k < dim; ++k) score += center[k] * out[k];
    const double loss = label > 0 ? -log_sigmoid(score) : -log_sigmoid(-score);
    const double g = eta * (label - sigmoid(score));
    for (std::size_t k = 0; k < dim; ++k) {
      center_grad[k] += g * out[k];
      out[k] += g * center[k];
    }
    return loss;
  };

  for (const auto& obs : observations) {
    const auto ids = to_ids(obs, vocab);
    const auto n = static_cast<std::ptrdiff_t>(ids.size());
    for (std::ptrdiff_t p = 0; p < n; ++p) {
      if (ids[p] < 0) continue;
      double* center = state.input.data() + static_cast<std::size_t>(ids[p]) * dim;
      for (std::ptrdiff_t q = std::max<std::ptrdiff_t>(0, p - config.context_window);
           q <= std::min(n - 1, p + config.context_window); ++q) {
        if (q == p || ids[q] < 0) continue;
        const auto context = static_cast<std::size_t>(ids[q]);
        std::fill(center_grad.begin(), center_grad.end(), 0.0);
        double loss = step(center, context, 1.0);
        for (int s = 0; s < config.negative_samples; ++s) {
          const std::size_t noise = state.sampler.sample(state.rng);
          if (noise == context) continue;
          loss += step(center, noise, 0.0);
        }
        if (!std::isfinite(loss)) {
          std::ostringstream msg;
          msg << "non-finite SGNS loss at pair (center=" << vocab.token(ids[p])
              << ", context=" << vocab.token(context) << ") in " << obs.source_id;
          throw NumericalError(msg.str());
        }
        total += loss;
        for (std::size_t k = 0; k < dim; ++k) center[k] += center_grad[k];
      }
    }
  }
  return total;
}

std::vector<float> sgns_vectors(const SgnsState& state) {
  return {state.input.begin(), state.input.end()};
}

}  // namespace termtrend
