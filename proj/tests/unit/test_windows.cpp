#include <doctest.h>

#include <random>
#include <set>

#include "termtrend/error.hpp"
#include "termtrend/windows.hpp"

using namespace termtrend;

namespace {

std::vector<Observation> span(int first, int last) {
  std::vector<Observation> obs;
  for (int y = first; y <= last; ++y) obs.push_back({"o" + std::to_string(y), y, {"w"}});
  return obs;
}

}  // namespace

TEST_CASE("window counts") {
  const auto obs = span(1971, 2019);
  auto five = build_windows(obs, 5, 1);
  REQUIRE(five.size() == 45);
  CHECK(five.front().window == TimeWindow{1971, 1975});
  CHECK(five.back().window == TimeWindow{2015, 2019});
  CHECK(build_windows(obs, 10, 1).size() == 40);
  CHECK(build_windows(obs, 10, 1).back().window == TimeWindow{2010, 2019});

  const std::vector<Observation> single{{"a", 2000, {"x"}}, {"b", 2000, {"y"}}};
  auto one = build_windows(single, 1, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].window == TimeWindow{2000, 2000});
  CHECK(one[0].observations.size() == 2);
}

TEST_CASE("window errors") {
  CHECK_THROWS_AS(build_windows({{"a", std::nullopt, {"x"}}}, 5, 1), DataError);
  CHECK_THROWS_AS(build_windows({}, 5, 1), DataError);
  CHECK_THROWS_AS(build_windows(span(2000, 2005), 0, 1), UsageError);
  CHECK_THROWS_AS(build_windows(span(2000, 2005), 2, 0), UsageError);
}

TEST_CASE("windows have the configured width and contain exactly their years") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Observation> obs;
    for (int i = 0; i < 60; ++i) {
      obs.push_back({"o" + std::to_string(i), 1980 + static_cast<int>(rng() % 30), {"w"}});
    }
    const int width = 1 + static_cast<int>(rng() % 7);
    const int step = 1 + static_cast<int>(rng() % 3);
    for (const auto& slice : build_windows(obs, width, step)) {
      CHECK(slice.window.width() == width);
      std::size_t expected = 0;
      for (const auto& o : obs) expected += slice.window.contains(*o.year);
      CHECK(slice.observations.size() == expected);
      for (const auto& o : slice.observations) CHECK(slice.window.contains(*o.year));
    }
  }
}

TEST_CASE("window labels parse back") {
  const TimeWindow w{1971, 1975};
  CHECK(w.label() == "1971-1975");
  CHECK(TimeWindow::parse_label("1971-1975") == w);
  CHECK_FALSE(TimeWindow::parse_label("1975-1971").has_value());
  CHECK_FALSE(TimeWindow::parse_label("book").has_value());
}

TEST_CASE("vocabulary counts distinct observations") {
  const std::vector<Observation> obs{
      {"1", 1, {"defect", "x", "x", "x", "x", "x"}},
      {"2", 1, {"defect", "y"}},
      {"3", 1, {"defect", "y"}},
  };
  const auto v3 = build_vocabulary(obs, 3);
  REQUIRE(v3.size() == 1);
  CHECK(v3.token(0) == "defect");
  CHECK(v3.obs_frequency(0) == 3);
  CHECK_FALSE(v3.contains("x"));

  const auto v1 = build_vocabulary(obs, 1);
  CHECK(v1.tokens() == std::vector<std::string>{"defect", "y", "x"});
}

TEST_CASE("vocabulary shrinks as min_df grows") {
  std::mt19937 rng(3);
  std::vector<Observation> obs;
  for (int i = 0; i < 80; ++i) {
    Observation o{"o" + std::to_string(i), 2000, {}};
    for (int t = 0; t < 8; ++t) o.tokens.push_back(std::string(1, static_cast<char>('a' + rng() % 20)));
    obs.push_back(o);
  }
  std::set<std::string> previous;
  for (std::size_t k = 1; k <= 40; ++k) {
    const auto v = build_vocabulary(obs, k);
    const std::set<std::string> current(v.tokens().begin(), v.tokens().end());
    if (k > 1) {
      for (const auto& t : current) CHECK(previous.count(t) == 1);
    }
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      CHECK(v.obs_frequency(i) >= v.obs_frequency(i + 1));
      if (v.obs_frequency(i) == v.obs_frequency(i + 1)) CHECK(v.token(i) < v.token(i + 1));
    }
    previous = current;
  }
}
