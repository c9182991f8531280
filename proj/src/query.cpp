#include "termtrend/query.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "termtrend/error.hpp"

namespace termtrend {

QueryExpression::QueryExpression(std::vector<QueryTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw UsageError("query expression has no terms");
  bool positive = false;
  for (const auto& t : terms_) {
    if (t.word.empty()) throw UsageError("query term without a word");
    if (t.sign != 1 && t.sign != -1) throw UsageError("query term sign must be +1 or -1");
    positive |= t.sign > 0;
  }
  if (!positive) throw UsageError("query expression needs at least one '+' term");
}

QueryExpression QueryExpression::parse(std::string_view text) {
  std::vector<QueryTerm> terms;
  std::istringstream in{std::string(text)};
  std::string item;
  while (in >> item) {
    QueryTerm term;
    if (item.front() == '+' || item.front() == '-') {
      term.sign = item.front() == '+' ? 1 : -1;
      item.erase(0, 1);
    }
    if (item.empty()) throw UsageError("dangling sign in query '" + std::string(text) + "'");
    term.word = std::move(item);
    terms.push_back(std::move(term));
  }
  return QueryExpression(std::move(terms));
}

QueryExpression QueryExpression::sum_of(const std::vector<std::string>& words) {
  std::vector<QueryTerm> terms;
  for (const auto& w : words) terms.push_back({1, w});
  return QueryExpression(std::move(terms));
}

bool QueryExpression::mentions(std::string_view word) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const QueryTerm& t) { return t.word == word; });
}

std::string QueryExpression::to_string() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += ' ';
    out += t.sign > 0 ? '+' : '-';
    out += t.word;
  }
  return out;
}

ComposedQuery compose(const QueryExpression& expr, const EmbeddingModel& model) {
  ComposedQuery q;
  q.vector.assign(model.dim, 0.0);
  for (const auto& term : expr.terms()) {
    auto idx = model.vocabulary.find(term.word);
    if (!idx) throw OutOfVocabulary(term.word);
    auto row = model.row(*idx);
    for (std::size_t k = 0; k < model.dim; ++k) {
      q.vector[k] += term.sign * static_cast<double>(row[k]);
    }
  }
  q.zero = std::all_of(q.vector.begin(), q.vector.end(), [](double v) { return v == 0.0; });
  return q;
}

namespace {

struct Scored {
  std::size_t index;
  double cosine;
};

bool better(const Scored& a, const Scored& b) {
  return a.cosine != b.cosine ? a.cosine > b.cosine : a.index < b.index;
}

// Cosine of every vocabulary row against the query; query words excluded.
std::vector<Scored> score_all(const QueryExpression& expr, const EmbeddingModel& model) {
  const auto q = compose(expr, model);
  if (q.zero) throw DataError("degenerate query: '" + expr.to_string() + "' composes to zero");
  double q_sq = 0.0;
  for (double v : q.vector) q_sq += v * v;
  const double q_norm = std::sqrt(q_sq);

  std::vector<bool> excluded(model.vocabulary.size(), false);
  for (const auto& t : expr.terms()) excluded[*model.vocabulary.find(t.word)] = true;

  std::vector<Scored> scored;
  scored.reserve(model.vocabulary.size());
  for (std::size_t i = 0; i < model.vocabulary.size(); ++i) {
    if (excluded[i]) continue;
    auto row = model.row(i);
    double dot = 0.0;
    double sq = 0.0;
    for (std::size_t k = 0; k < model.dim; ++k) {
      const double v = row[k];
      dot += q.vector[k] * v;
      sq += v * v;
    }
    const double cosine = sq == 0.0 ? -std::numeric_limits<double>::infinity()
                                    : dot / (q_norm * std::sqrt(sq));
    scored.push_back({i, cosine});
  }
  return scored;
}

std::vector<RankedNeighbor> to_neighbors(const std::vector<Scored>& scored,
                                         const EmbeddingModel& model, std::size_t count) {
  std::vector<RankedNeighbor> out;
  out.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    out.push_back({model.vocabulary.token(scored[r].index), scored[r].cosine, r + 1});
  }
  return out;
}

}  // namespace

std::vector<RankedNeighbor> rank_all(const QueryExpression& expr, const EmbeddingModel& model) {
  auto scored = score_all(expr, model);
  std::sort(scored.begin(), scored.end(), better);
  return to_neighbors(scored, model, scored.size());
}

std::vector<RankedNeighbor> top_k(const QueryExpression& expr, const EmbeddingModel& model,
                                  std::size_t k) {
  if (k < 1) throw UsageError("k must be >= 1");
  auto scored = score_all(expr, model);
  const std::size_t count = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(count),
                    scored.end(), better);
  return to_neighbors(scored, model, count);
}

std::optional<std::size_t> rank_of(const QueryExpression& expr, const EmbeddingModel& model,
                                   std::string_view target) {
  auto target_idx = model.vocabulary.find(target);
  if (!target_idx) return std::nullopt;
  if (expr.mentions(target)) {
    throw UsageError("rank target '" + std::string(target) + "' is part of the query");
  }
  const auto scored = score_all(expr, model);
  const auto self = std::find_if(scored.begin(), scored.end(),
                                 [&](const Scored& s) { return s.index == *target_idx; });
  const auto ahead = std::count_if(scored.begin(), scored.end(),
                                   [&](const Scored& s) { return better(s, *self); });
  return static_cast<std::size_t>(ahead) + 1;
}

std::optional<PrefixRank> prefix_min_rank(const QueryExpression& expr,
                                          const EmbeddingModel& model, std::string_view prefix) {
  if (prefix.empty()) throw UsageError("empty prefix");
  const auto& tokens = model.vocabulary.tokens();
  if (std::none_of(tokens.begin(), tokens.end(),
                   [&](const std::string& t) { return t.starts_with(prefix); })) {
    return std::nullopt;
  }
  for (const auto& n : rank_all(expr, model)) {
    if (n.word.starts_with(prefix)) return PrefixRank{n.rank, n.word};
  }
  return std::nullopt;
}

}  // namespace termtrend
