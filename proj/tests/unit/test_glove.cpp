#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fixtures.hpp"
#include "gradient_oracle.hpp"
#include "termtrend/cooccurrence.hpp"
#include "termtrend/error.hpp"
#include "termtrend/glove.hpp"

using namespace termtrend;

namespace {

TrainerConfig small_config(int dim = 8) {
  TrainerConfig cfg;
  cfg.dim = dim;
  cfg.seed = 3;
  return cfg;
}

}  // namespace

TEST_CASE("weighting function") {
  CHECK(glove_weight(100.0, 100.0, 0.75) == 1.0);
  CHECK(glove_weight(250.0, 100.0, 0.75) == 1.0);
  CHECK(glove_weight(50.0, 100.0, 0.75) == doctest::Approx(std::pow(0.5, 0.75)).epsilon(1e-15));
  CHECK(glove_weight(1.0, 100.0, 0.5) == doctest::Approx(0.1));
}

TEST_CASE("initialisation is bounded and seeded") {
  const auto cfg = small_config(10);
  const auto a = init_glove_state(30, cfg);
  const auto b = init_glove_state(30, cfg);
  CHECK(a.word == b.word);
  for (double v : a.word) CHECK(std::abs(v) <= 0.05);
  for (double v : a.context_bias) CHECK(std::abs(v) <= 0.05);
  for (double v : a.word_gradsq) CHECK(v == 1.0);
}

TEST_CASE("analytic gradient matches finite differences") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int trial = 0; trial < 25; ++trial) {
    auto cfg = small_config(6);
    auto state = init_glove_state(2, cfg);
    for (auto& v : state.word) v = u(rng);
    for (auto& v : state.context) v = u(rng);
    state.word_bias[0] = u(rng);
    state.context_bias[1] = u(rng);
    const double x = 0.2 + 150.0 * (u(rng) + 0.6);

    std::vector<double> gw(6), gc(6);
    GloveGradient grad{gw, gc};
    glove_entry_gradient(state, 0, 1, x, cfg, grad);

    testing::GlovePoint p;
    p.w.assign(state.word.begin(), state.word.begin() + 6);
    p.c.assign(state.context.begin() + 6, state.context.end());
    p.bw = state.word_bias[0];
    p.bc = state.context_bias[1];
    p.x = x;
    const auto numeric = testing::numeric_gradient(p);
    for (int k = 0; k < 6; ++k) {
      CHECK(testing::relative_error(gw[k], numeric[k]) <= 1e-5);
      CHECK(testing::relative_error(gc[k], numeric[6 + k]) <= 1e-5);
    }
    CHECK(testing::relative_error(grad.word_bias, numeric[12]) <= 1e-5);
    CHECK(testing::relative_error(grad.context_bias, numeric[13]) <= 1e-5);
    CHECK(glove_entry_loss(state, 0, 1, x, cfg) ==
          doctest::Approx(testing::reference_loss(p)).epsilon(1e-12));
  }
}

TEST_CASE("single entry converges to zero loss") {
  const CooccurrenceTable table(2, {{0, 1, 1.0}});
  auto cfg = small_config(4);
  cfg.x_max = 1.0;
  auto state = init_glove_state(2, cfg);
  double loss = 0.0;
  for (int epoch = 0; epoch < 400; ++epoch) loss = glove_epoch(state, table, cfg);
  CHECK(loss < 1e-8);
  double dot = 0.0;
  for (int k = 0; k < 4; ++k) dot += state.word[k] * state.context[4 + k];
  CHECK(dot + state.word_bias[0] + state.context_bias[1] == doctest::Approx(0.0).epsilon(1e-4));
}

TEST_CASE("epoch loss trends down on planted topics") {
  const auto corpus = testing::planted_topics(4, 10, 5, 300, 10);
  const auto vocab = build_vocabulary(corpus.observations, 1);
  auto cfg = small_config(16);
  const auto table = build_cooccurrence(corpus.observations, vocab, cfg.context_window);
  auto state = init_glove_state(vocab.size(), cfg);
  std::vector<double> losses;
  for (int epoch = 0; epoch < 10; ++epoch) losses.push_back(glove_epoch(state, table, cfg));
  for (std::size_t i = 1; i < losses.size(); ++i) {
    CHECK(losses[i] <= losses[i - 1] * 1.01);
  }
  CHECK(losses.back() < losses.front());
}

TEST_CASE("fixed seed gives bit-identical states") {
  const auto corpus = testing::planted_topics(8, 5, 4, 100, 8);
  const auto vocab = build_vocabulary(corpus.observations, 1);
  const auto cfg = small_config(8);
  const auto table = build_cooccurrence(corpus.observations, vocab, 5);
  auto a = init_glove_state(vocab.size(), cfg);
  auto b = init_glove_state(vocab.size(), cfg);
  for (int epoch = 0; epoch < 5; ++epoch) {
    CHECK(glove_epoch(a, table, cfg) == glove_epoch(b, table, cfg));
  }
  CHECK(a.word == b.word);
  CHECK(a.context == b.context);
  CHECK(glove_vectors(a) == glove_vectors(b));
}

TEST_CASE("non-finite loss is reported with the entry") {
  const CooccurrenceTable table(2, {{0, 1, 1.0}, {1, 0, 1.0}});
  const auto cfg = small_config(2);
  auto state = init_glove_state(2, cfg);
  state.word[0] = std::numeric_limits<double>::quiet_NaN();
  try {
    glove_epoch(state, table, cfg);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("row=") != std::string::npos);
  }
}

TEST_CASE("final vectors are word plus context") {
  const auto cfg = small_config(3);
  const auto state = init_glove_state(4, cfg);
  const auto v = glove_vectors(state);
  REQUIRE(v.size() == 12);
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(v[i] == static_cast<float>(state.word[i] + state.context[i]));
  }
}
