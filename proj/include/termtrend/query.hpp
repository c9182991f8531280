#pragma once

// Exact cosine-similarity queries over signed word expressions.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termtrend/model.hpp"

namespace termtrend {

struct QueryTerm {
  int sign = 1;  // +1 or -1
  std::string word;

  friend bool operator==(const QueryTerm&, const QueryTerm&) = default;
};

class QueryExpression {
 public:
  // At least one term, at least one positive.
  explicit QueryExpression(std::vector<QueryTerm> terms);

  // Whitespace-separated "+word", "-word" or bare "word" (= "+word").
  static QueryExpression parse(std::string_view text);
  static QueryExpression sum_of(const std::vector<std::string>& words);

  const std::vector<QueryTerm>& terms() const noexcept { return terms_; }
  bool mentions(std::string_view word) const;
  std::string to_string() const;

  friend bool operator==(const QueryExpression&, const QueryExpression&) = default;

 private:
  std::vector<QueryTerm> terms_;
};

struct ComposedQuery {
  std::vector<double> vector;
  bool zero = false;  // every component cancelled
};

// Signed sum of the term vectors. Throws OutOfVocabulary.
ComposedQuery compose(const QueryExpression& expr, const EmbeddingModel& model);

struct RankedNeighbor {
  std::string word;
  double cosine = 0.0;
  std::size_t rank = 0;  // 1-based

  friend bool operator==(const RankedNeighbor&, const RankedNeighbor&) = default;
};

// Every non-query word ordered by cosine to the composed query (descending,
// ties by vocabulary index). Zero-norm rows score -infinity.
// Throws DataError("degenerate query") on a zero composed vector.
std::vector<RankedNeighbor> rank_all(const QueryExpression& expr, const EmbeddingModel& model);

std::vector<RankedNeighbor> top_k(const QueryExpression& expr, const EmbeddingModel& model,
                                  std::size_t k);

// Absent when `target` is not in the vocabulary.
std::optional<std::size_t> rank_of(const QueryExpression& expr, const EmbeddingModel& model,
                                   std::string_view target);

struct PrefixRank {
  std::size_t rank = 0;
  std::string word;

  friend bool operator==(const PrefixRank&, const PrefixRank&) = default;
};

// Best-ranked non-query vocabulary word starting with `prefix`.
std::optional<PrefixRank> prefix_min_rank(const QueryExpression& expr,
                                          const EmbeddingModel& model, std::string_view prefix);

}  // namespace termtrend
