#pragma once

// Test-only generators and brute-force oracles. Nothing here calls into the
// code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "termtrend/corpus.hpp"
#include "termtrend/model.hpp"
#include "termtrend/windows.hpp"

namespace termtrend::testing {

inline std::string alpha_name(std::string_view stem, std::size_t n) {
  std::string suffix;
  do {
    suffix.insert(suffix.begin(), static_cast<char>('a' + n % 26));
    n /= 26;
  } while (n > 0);
  return std::string(stem) + suffix;
}

// Model over words w0..wN with the given row-major vectors.
inline EmbeddingModel make_model(std::vector<std::string> words, std::size_t dim,
                                 std::vector<float> vectors) {
  EmbeddingModel m;
  m.vocabulary = Vocabulary(std::move(words), {}, 0);
  m.dim = dim;
  m.vectors = std::move(vectors);
  m.label = "fixture";
  return m;
}

// Random small-integer vectors with some duplicated and zero rows, so
// exact cosine ties occur.
inline EmbeddingModel random_tie_model(std::uint64_t seed, std::size_t vocab, std::size_t dim) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> value(-3, 3);
  std::vector<std::string> words;
  std::vector<float> vectors;
  for (std::size_t i = 0; i < vocab; ++i) {
    words.push_back(alpha_name("w", i));
    const auto roll = rng() % 10;
    if (i > 0 && roll == 0) {
      const auto src = rng() % i;  // duplicate an earlier row
      for (std::size_t k = 0; k < dim; ++k) vectors.push_back(vectors[src * dim + k]);
    } else if (roll == 1) {
      for (std::size_t k = 0; k < dim; ++k) vectors.push_back(0.0f);
    } else {
      for (std::size_t k = 0; k < dim; ++k) vectors.push_back(static_cast<float>(value(rng)));
    }
  }
  return make_model(std::move(words), dim, std::move(vectors));
}

struct OracleEntry {
  std::string word;
  double cosine;
};

// Full exhaustive ranking: signed sum of query rows, cosine to every
// non-query row (zero norm = -inf), stable sort so ties keep index order.
inline std::vector<OracleEntry> oracle_ranking(const EmbeddingModel& m,
                                               const std::vector<std::pair<int, std::string>>& terms) {
  const auto& words = m.vocabulary.tokens();
  auto index_of = [&](const std::string& w) {
    return static_cast<std::size_t>(std::find(words.begin(), words.end(), w) - words.begin());
  };
  std::vector<double> q(m.dim, 0.0);
  for (const auto& [sign, w] : terms) {
    const auto i = index_of(w);
    for (std::size_t k = 0; k < m.dim; ++k) q[k] += sign * static_cast<double>(m.vectors[i * m.dim + k]);
  }
  double qq = 0.0;
  for (double v : q) qq += v * v;
  std::vector<OracleEntry> all;
  for (std::size_t i = 0; i < words.size(); ++i) {
    bool in_query = false;
    for (const auto& t : terms) in_query |= t.second == words[i];
    if (in_query) continue;
    double dot = 0.0, vv = 0.0;
    for (std::size_t k = 0; k < m.dim; ++k) {
      const double v = m.vectors[i * m.dim + k];
      dot += q[k] * v;
      vv += v * v;
    }
    all.push_back({words[i], vv == 0.0 ? -std::numeric_limits<double>::infinity()
                                       : dot / (std::sqrt(qq) * std::sqrt(vv))});
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const OracleEntry& a, const OracleEntry& b) { return a.cosine > b.cosine; });
  return all;
}

// All non-empty proper subsets of {0..l-1} by brute-force bit enumeration.
inline std::size_t oracle_proper_subset_count(std::size_t l) {
  std::size_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << l); ++mask) {
    const auto bits = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (bits > 0 && bits < l) ++count;
  }
  return count;
}

struct PlantedCorpus {
  std::vector<Observation> observations;
  std::vector<std::vector<std::string>> topics;
};

// `topics` groups of `words_per_topic` dedicated words. Each observation
// draws one topic and emits `length` tokens: a topic word with probability
// `topic_rate`, otherwise one of `noise_words` shared filler words.
inline PlantedCorpus planted_topics(std::uint64_t seed, std::size_t topics = 50,
                                    std::size_t words_per_topic = 5,
                                    std::size_t observations = 2000, std::size_t length = 12,
                                    double topic_rate = 0.7, std::size_t noise_words = 100) {
  std::mt19937_64 rng(seed);
  PlantedCorpus corpus;
  for (std::size_t t = 0; t < topics; ++t) {
    std::vector<std::string> group;
    for (std::size_t w = 0; w < words_per_topic; ++w) {
      group.push_back(alpha_name("topic", t * words_per_topic + w));
    }
    corpus.topics.push_back(std::move(group));
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t o = 0; o < observations; ++o) {
    const auto& group = corpus.topics[rng() % topics];
    Observation obs;
    obs.source_id = "obs" + std::to_string(o);
    obs.year = 2000 + static_cast<int>(o % 10);
    for (std::size_t i = 0; i < length; ++i) {
      if (coin(rng) < topic_rate) {
        obs.tokens.push_back(group[rng() % group.size()]);
      } else {
        obs.tokens.push_back(alpha_name("noise", rng() % noise_words));
      }
    }
    corpus.observations.push_back(std::move(obs));
  }
  return corpus;
}

// Pairwise co-occurrence weights by direct enumeration of every position pair.
inline std::map<std::pair<std::string, std::string>, double> oracle_cooccurrence(
    const std::vector<Observation>& observations, const Vocabulary& vocab, int window) {
  std::map<std::pair<std::string, std::string>, double> w;
  for (const auto& obs : observations) {
    const auto& t = obs.tokens;
    for (std::size_t p = 0; p < t.size(); ++p) {
      for (std::size_t q = 0; q < t.size(); ++q) {
        const auto d = p > q ? p - q : q - p;
        if (d == 0 || d > static_cast<std::size_t>(window)) continue;
        if (!vocab.contains(t[p]) || !vocab.contains(t[q]) || t[p] == t[q]) continue;
        w[{t[p], t[q]}] += 1.0 / static_cast<double>(d);
      }
    }
  }
  return w;
}

}  // namespace termtrend::testing
