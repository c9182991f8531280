#pragma once

// Keyword test suite: every proper subset of a keyword's words must retrieve
// the remaining words among the query's top-k neighbours.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "termtrend/model.hpp"

namespace termtrend {

inline constexpr std::size_t kDefaultTopK = 20;

struct Keyword {
  std::string id;
  std::vector<std::string> words;  // 2..6 distinct lowercase tokens

  // Throws DataError when the invariants do not hold.
  static Keyword make(std::vector<std::string> words, std::string id = {});
};

struct Combination {
  std::vector<std::string> input;     // non-empty proper subset, keyword order
  std::vector<std::string> expected;  // the complement, keyword order

  friend bool operator==(const Combination&, const Combination&) = default;
};

// 2^l - 2 combinations ordered by input size, then lexicographically by
// the inputs' positions in the keyword.
std::vector<Combination> expand_keyword(const Keyword& keyword);

struct CaseResult {
  std::string keyword_id;
  bool excluded = false;
  std::optional<double> score;         // S; absent when excluded
  std::vector<std::size_t> hits;       // per combination
  std::vector<std::size_t> expected;   // per combination
  std::vector<std::string> missing;    // out-of-vocabulary words behind an exclusion
};

struct SuiteResult {
  std::vector<CaseResult> results;
  double degree_of_success = 0.0;  // D over non-excluded cases
  std::size_t t_effective = 0;

  std::size_t t_total() const noexcept { return results.size(); }
  double exclusion_percent() const;
};

CaseResult score_case(const Keyword& keyword, const EmbeddingModel& model,
                      std::size_t k = kDefaultTopK);

// Throws DataError("no scorable test cases") when every case is excluded.
SuiteResult score_suite(const std::vector<Keyword>& keywords, const EmbeddingModel& model,
                        std::size_t k = kDefaultTopK);

// One keyword per line, words separated by whitespace, '#' comment lines.
// Ids are the words joined with '_'.
std::vector<Keyword> read_keywords(const std::filesystem::path& path);

// keyword_id,excluded,S (S empty for excluded cases).
void write_suite_report(const std::filesystem::path& path, const SuiteResult& suite);
// D,T_effective,T_total,excluded_percent
void write_suite_summary(const std::filesystem::path& path, const SuiteResult& suite);

struct EpochScore {
  int epoch = 0;
  std::filesystem::path path;
  std::optional<double> degree_of_success;  // absent: nothing scorable
};

struct EpochSelection {
  std::optional<EpochScore> best;  // absent when no snapshot is scorable
  std::vector<EpochScore> table;   // ascending epoch
};

// Maps a snapshot to its D, or nullopt when it has no scorable cases.
using SuiteScorer = std::function<std::optional<double>(const std::filesystem::path&)>;

// Argmax of D over the snapshots; ties go to the smallest epoch. Epoch
// numbers come from the "<label>_epoch<NNN>.vec" file names.
EpochSelection select_best_epoch(const std::vector<std::filesystem::path>& snapshots,
                                 const SuiteScorer& scorer);
EpochSelection select_best_epoch(const std::vector<std::filesystem::path>& snapshots,
                                 const std::vector<Keyword>& keywords,
                                 std::size_t k = kDefaultTopK);

// epoch,D (D empty when absent).
void write_epoch_table(const std::filesystem::path& path, const std::vector<EpochScore>& table);

}  // namespace termtrend
