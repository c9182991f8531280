#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "fixtures.hpp"
#include "termtrend/error.hpp"
#include "termtrend/model.hpp"
#include "termtrend/train.hpp"

namespace fs = std::filesystem;
using namespace termtrend;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "termtrend_unit" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("snapshot names") {
  CHECK(snapshot_file_name("1971-1975", 7) == "1971-1975_epoch007.vec");
  CHECK(snapshot_file_name("book-swebok", 200) == "book-swebok_epoch200.vec");
  const auto parsed = parse_snapshot_name("1971-1975_epoch1200.vec");
  REQUIRE(parsed);
  CHECK(parsed->label == "1971-1975");
  CHECK(parsed->epoch == 1200);
  CHECK_FALSE(parse_snapshot_name("1971-1975_epoch7.vec"));
  CHECK_FALSE(parse_snapshot_name("notes.txt"));
}

TEST_CASE("save then load gives an equal model") {
  const auto dir = scratch("model_rt");
  std::mt19937 rng(8);
  std::uniform_real_distribution<float> u(-3.0f, 3.0f);
  std::vector<std::string> words;
  std::vector<float> vectors;
  for (int i = 0; i < 40; ++i) {
    words.push_back(testing::alpha_name("w", i));
    for (int k = 0; k < 7; ++k) vectors.push_back(u(rng) * std::pow(10.0f, static_cast<float>(rng() % 9) - 4.0f));
  }
  auto model = testing::make_model(words, 7, vectors);
  model.label = "2001-2005";
  model.epoch = 12;
  const auto path = dir / snapshot_file_name(model.label, model.epoch);
  save_model(model, path);
  const auto loaded = load_model(path);
  CHECK(loaded.vocabulary.tokens() == words);
  CHECK(loaded.dim == 7);
  CHECK(loaded.vectors == vectors);  // exact: nine digits survive a float
  CHECK(loaded.epoch == 12);
  CHECK(loaded.label == "2001-2005");
  REQUIRE(loaded.window);
  CHECK(*loaded.window == TimeWindow{2001, 2005});

  for (std::size_t i = 0; i < vectors.size(); ++i) {
    CHECK(std::abs(static_cast<double>(loaded.vectors[i]) - vectors[i]) <= 1e-7);
  }
}

TEST_CASE("malformed vector files are rejected") {
  const auto dir = scratch("model_bad");
  auto rejects = [&](const std::string& text) {
    write_file(dir / "m.vec", text);
    CHECK_THROWS_AS(load_model(dir / "m.vec"), DataError);
  };
  rejects("2 3\na 1 2 3\nb 1 2 3\nc 1 2 3\n");
  rejects("3 3\na 1 2 3\nb 1 2 3\n");
  rejects("2 3\na 1 2 3\nb 1 2\n");
  rejects("2 3\na 1 2 3\nb 1 nan 3\n");
  rejects("2 3\na 1 2 3\nb 1 inf 3\n");
  rejects("2 x\na 1 2 3\n");
  rejects("");
  CHECK_THROWS_AS(load_model(dir / "absent.vec"), DataError);
}

TEST_CASE("saving refuses non-finite vectors") {
  const auto dir = scratch("model_nan");
  auto model = testing::make_model({"a"}, 1, {std::numeric_limits<float>::infinity()});
  CHECK_THROWS_AS(save_model(model, dir / "m.vec"), Error);
}

TEST_CASE("train emits one finite snapshot per epoch") {
  const auto corpus = testing::planted_topics(1, 4, 4, 60, 8);
  const auto vocab = build_vocabulary(corpus.observations, 1);
  for (auto backend : {Backend::kGlove, Backend::kSgns}) {
    TrainerConfig cfg;
    cfg.dim = 6;
    cfg.backend = backend;
    std::vector<EmbeddingModel> seen;
    auto sink = [&](const EmbeddingModel& m) {
      seen.push_back(m);
      return fs::path(snapshot_file_name(m.label, m.epoch));
    };
    cfg.max_epochs = 1;
    auto one = train({corpus.observations, vocab, cfg, "x", std::nullopt}, sink);
    REQUIRE(one.size() == 1);
    CHECK(one[0].epoch == 1);
    for (float v : seen[0].vectors) CHECK(std::isfinite(v));

    seen.clear();
    cfg.max_epochs = 7;
    auto seven = train({corpus.observations, vocab, cfg, "x", std::nullopt}, sink);
    REQUIRE(seven.size() == 7);
    for (int e = 0; e < 7; ++e) {
      CHECK(seven[e].epoch == e + 1);
      CHECK(std::isfinite(seven[e].loss));
    }
  }
}

TEST_CASE("train reports tiny corpora") {
  const std::vector<Observation> lonely{{"1", 2000, {"a"}}, {"2", 2000, {"b"}}};
  const auto vocab = build_vocabulary(lonely, 1);
  TrainerConfig cfg;
  cfg.dim = 4;
  auto sink = [](const EmbeddingModel&) { return fs::path("unused"); };
  CHECK_THROWS_AS(train({lonely, vocab, cfg, "x", std::nullopt}, sink), CorpusTooSmall);
  cfg.backend = Backend::kSgns;
  CHECK_THROWS_AS(train({lonely, vocab, cfg, "x", std::nullopt}, sink), CorpusTooSmall);
  const Vocabulary empty;
  CHECK_THROWS_AS(train({lonely, empty, cfg, "x", std::nullopt}, sink), CorpusTooSmall);
}

TEST_CASE("trainer config validation") {
  TrainerConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.dim = 0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg = {};
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg = {};
  cfg.max_epochs = 0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  CHECK(parse_backend("sgns") == Backend::kSgns);
  CHECK_FALSE(parse_backend("fasttext"));
}
