#include "termtrend/eval.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "termtrend/error.hpp"
#include "termtrend/query.hpp"
#include "text_format.hpp"

namespace termtrend {

Keyword Keyword::make(std::vector<std::string> words, std::string id) {
  if (words.size() < 2 || words.size() > 6) {
    throw DataError("keyword must have 2 to 6 words, got " + std::to_string(words.size()));
  }
  std::set<std::string> distinct;
  for (const auto& w : words) {
    if (w.empty()) throw DataError("empty keyword word");
    if (std::any_of(w.begin(), w.end(), [](char c) { return c >= 'A' && c <= 'Z'; })) {
      throw DataError("keyword word '" + w + "' is not lowercase");
    }
    if (!distinct.insert(w).second) throw DataError("keyword repeats word '" + w + "'");
  }
  if (id.empty()) {
    for (const auto& w : words) id += (id.empty() ? "" : "_") + w;
  }
  return Keyword{std::move(id), std::move(words)};
}

std::vector<Combination> expand_keyword(const Keyword& keyword) {
  const std::size_t l = keyword.words.size();
  std::vector<std::vector<std::size_t>> subsets;
  for (unsigned mask = 1; mask + 1 < (1u << l); ++mask) {
    std::vector<std::size_t> positions;
    for (std::size_t p = 0; p < l; ++p) {
      if (mask & (1u << p)) positions.push_back(p);
    }
    subsets.push_back(std::move(positions));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Combination> out;
  out.reserve(subsets.size());
  for (const auto& positions : subsets) {
    Combination c;
    for (std::size_t p = 0; p < l; ++p) {
      const bool in = std::binary_search(positions.begin(), positions.end(), p);
      (in ? c.input : c.expected).push_back(keyword.words[p]);
    }
    out.push_back(std::move(c));
  }
  return out;
}

CaseResult score_case(const Keyword& keyword, const EmbeddingModel& model, std::size_t k) {
  if (k < 1) throw UsageError("k must be >= 1");
  CaseResult result;
  result.keyword_id = keyword.id;
  for (const auto& w : keyword.words) {
    if (!model.vocabulary.contains(w)) result.missing.push_back(w);
  }
  if (!result.missing.empty()) {
    result.excluded = true;
    return result;
  }
  std::size_t total_hits = 0;
  std::size_t total_expected = 0;
  for (const auto& combo : expand_keyword(keyword)) {
    std::size_t hits = 0;
    const auto q = QueryExpression::sum_of(combo.input);
    // An input whose vectors sum to zero retrieves nothing.
    if (!compose(q, model).zero) {
      const auto neighbors = top_k(q, model, k);
      for (const auto& w : combo.expected) {
        hits += std::any_of(neighbors.begin(), neighbors.end(),
                            [&](const RankedNeighbor& n) { return n.word == w; });
      }
    }
    result.hits.push_back(hits);
    result.expected.push_back(combo.expected.size());
    total_hits += hits;
    total_expected += combo.expected.size();
  }
  result.score = static_cast<double>(total_hits) / static_cast<double>(total_expected);
  return result;
}

double SuiteResult::exclusion_percent() const {
  if (results.empty()) return 0.0;
  return 100.0 * static_cast<double>(t_total() - t_effective) / static_cast<double>(t_total());
}

SuiteResult score_suite(const std::vector<Keyword>& keywords, const EmbeddingModel& model,
                        std::size_t k) {
  if (keywords.empty()) throw UsageError("empty keyword suite");
  SuiteResult suite;
  double sum = 0.0;
  for (const auto& kw : keywords) {
    auto result = score_case(kw, model, k);
    if (!result.excluded) {
      sum += *result.score;
      ++suite.t_effective;
    }
    suite.results.push_back(std::move(result));
  }
  if (suite.t_effective == 0) throw DataError("no scorable test cases");
  suite.degree_of_success = sum / static_cast<double>(suite.t_effective);
  return suite;
}

std::vector<Keyword> read_keywords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read keywords file: " + path.string());
  std::vector<Keyword> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words_in(line);
    std::vector<std::string> words;
    std::string w;
    while (words_in >> w) words.push_back(w);
    if (words.empty() || words.front().front() == '#') continue;
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    Keyword kw;
    try {
      kw = Keyword::make(std::move(words));
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    }
    if (!ids.insert(kw.id).second) throw DataError(where + "duplicate keyword '" + kw.id + "'");
    out.push_back(std::move(kw));
  }
  return out;
}

void write_suite_report(const std::filesystem::path& path, const SuiteResult& suite) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write suite report: " + path.string());
  out << "keyword_id,excluded,S\n";
  for (const auto& r : suite.results) {
    out << detail::csv_field(r.keyword_id) << ',' << (r.excluded ? "true" : "false") << ','
        << (r.score ? detail::format_double(*r.score) : "") << '\n';
  }
  if (!out) throw DataError("error while writing suite report: " + path.string());
}

void write_suite_summary(const std::filesystem::path& path, const SuiteResult& suite) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write suite summary: " + path.string());
  out << "D,T_effective,T_total,excluded_percent\n"
      << detail::format_double(suite.degree_of_success) << ',' << suite.t_effective << ','
      << suite.t_total() << ',' << detail::format_double(suite.exclusion_percent()) << '\n';
  if (!out) throw DataError("error while writing suite summary: " + path.string());
}

EpochSelection select_best_epoch(const std::vector<std::filesystem::path>& snapshots,
                                 const SuiteScorer& scorer) {
  if (snapshots.empty()) throw UsageError("no snapshots to select from");
  EpochSelection selection;
  for (const auto& path : snapshots) {
    auto name = parse_snapshot_name(path.filename().string());
    if (!name) throw DataError("not a snapshot file name: " + path.string());
    selection.table.push_back({name->epoch, path, scorer(path)});
  }
  std::stable_sort(selection.table.begin(), selection.table.end(),
                   [](const auto& a, const auto& b) { return a.epoch < b.epoch; });
  for (const auto& row : selection.table) {
    if (!row.degree_of_success) continue;
    // Strict comparison so the earliest epoch keeps a tie.
    if (!selection.best || *row.degree_of_success > *selection.best->degree_of_success) {
      selection.best = row;
    }
  }
  return selection;
}

EpochSelection select_best_epoch(const std::vector<std::filesystem::path>& snapshots,
                                 const std::vector<Keyword>& keywords, std::size_t k) {
  return select_best_epoch(snapshots, [&](const std::filesystem::path& path)
                                          -> std::optional<double> {
    const auto model = load_model(path);
    try {
      return score_suite(keywords, model, k).degree_of_success;
    } catch (const DataError&) {
      return std::nullopt;  // nothing scorable in this snapshot
    }
  });
}

void write_epoch_table(const std::filesystem::path& path, const std::vector<EpochScore>& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write epoch table: " + path.string());
  out << "epoch,D\n";
  for (const auto& row : table) {
    out << row.epoch << ','
        << (row.degree_of_success ? detail::format_double(*row.degree_of_success) : "") << '\n';
  }
  if (!out) throw DataError("error while writing epoch table: " + path.string());
}

}  // namespace termtrend
