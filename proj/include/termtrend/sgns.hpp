#pragma once

// Skip-gram with negative sampling, plain SGD.

#include <cstddef>
#include <span>
#include <vector>

#include "termtrend/corpus.hpp"
#include "termtrend/random.hpp"
#include "termtrend/trainer_config.hpp"
#include "termtrend/windows.hpp"

namespace termtrend {

// Draws token indices with probability proportional to count^power.
class NegativeSampler {
 public:
  NegativeSampler() = default;
  NegativeSampler(std::span<const double> counts, double power = 0.75);

  std::size_t sample(Rng& rng) const;
  double probability(std::size_t index) const;
  std::size_t size() const noexcept { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;  // normalized, last == 1
};

struct SgnsState {
  std::size_t vocab_size = 0;
  std::size_t dim = 0;
  std::vector<double> input;   // vocab_size x dim; the final embedding
  std::vector<double> output;  // vocab_size x dim
  NegativeSampler sampler;
  Rng rng{0};
};

// Total in-vocabulary occurrences per token.
std::vector<double> unigram_counts(const std::vector<Observation>& observations,
                                   const Vocabulary& vocab);

// Number of (center, context) pairs one epoch visits.
std::size_t count_sgns_pairs(const std::vector<Observation>& observations,
                             const Vocabulary& vocab, int context_window);

SgnsState init_sgns_state(const std::vector<Observation>& observations, const Vocabulary& vocab,
                          const TrainerConfig& config);

// One pass over every (center, context) pair within the context window, in
// corpus order. Returns the summed negative log-likelihood before updates.
double sgns_epoch(SgnsState& state, const std::vector<Observation>& observations,
                  const Vocabulary& vocab, const TrainerConfig& config);

std::vector<float> sgns_vectors(const SgnsState& state);

}  // namespace termtrend
