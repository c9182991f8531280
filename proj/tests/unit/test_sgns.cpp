#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "termtrend/sgns.hpp"

using namespace termtrend;

TEST_CASE("noise distribution follows the three-quarter power") {
  const std::vector<double> counts{8.0, 1.0, 3.0};
  const NegativeSampler sampler(counts);
  CHECK(sampler.probability(0) / sampler.probability(1) ==
        doctest::Approx(std::pow(8.0, 0.75)).epsilon(1e-12));
  CHECK(sampler.probability(0) / sampler.probability(1) == doctest::Approx(4.76).epsilon(1e-3));
  CHECK(sampler.probability(0) + sampler.probability(1) + sampler.probability(2) ==
        doctest::Approx(1.0));

  Rng rng(17);
  std::vector<double> seen(3, 0.0);
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) seen[sampler.sample(rng)] += 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(seen[i] / draws == doctest::Approx(sampler.probability(i)).epsilon(0.02));
  }
}

TEST_CASE("positive-only updates decrease the loss on a two-token corpus") {
  const std::vector<Observation> obs{{"1", 2000, {"left", "right"}}};
  const auto vocab = build_vocabulary(obs, 1);
  TrainerConfig cfg;
  cfg.dim = 4;
  cfg.negative_samples = 0;
  cfg.learning_rate = 0.5;
  auto state = init_sgns_state(obs, vocab, cfg);
  CHECK(count_sgns_pairs(obs, vocab, cfg.context_window) == 2);
  double previous = sgns_epoch(state, obs, vocab, cfg);
  CHECK(previous == doctest::Approx(2.0 * std::log(2.0)));
  for (int epoch = 0; epoch < 20; ++epoch) {
    const double loss = sgns_epoch(state, obs, vocab, cfg);
    CHECK(std::isfinite(loss));
    CHECK(loss < previous);
    previous = loss;
  }
}

TEST_CASE("sgns is bit-identical under a fixed seed") {
  const auto corpus = testing::planted_topics(2, 6, 4, 120, 8);
  const auto vocab = build_vocabulary(corpus.observations, 1);
  TrainerConfig cfg;
  cfg.dim = 10;
  cfg.context_window = 3;
  cfg.backend = Backend::kSgns;
  auto a = init_sgns_state(corpus.observations, vocab, cfg);
  auto b = init_sgns_state(corpus.observations, vocab, cfg);
  for (int epoch = 0; epoch < 4; ++epoch) {
    CHECK(sgns_epoch(a, corpus.observations, vocab, cfg) ==
          sgns_epoch(b, corpus.observations, vocab, cfg));
  }
  CHECK(a.input == b.input);
  CHECK(a.output == b.output);
  CHECK(sgns_vectors(a) == sgns_vectors(b));

  cfg.seed = 2;
  auto c = init_sgns_state(corpus.observations, vocab, cfg);
  CHECK(c.input != a.input);
}

TEST_CASE("pair counting ignores out-of-vocabulary tokens but keeps their positions") {
  const Vocabulary vocab({"a", "b"}, {}, 1);
  const std::vector<Observation> obs{{"1", 1, {"a", "zz", "b"}}};
  CHECK(count_sgns_pairs(obs, vocab, 1) == 0);
  CHECK(count_sgns_pairs(obs, vocab, 2) == 2);
}
