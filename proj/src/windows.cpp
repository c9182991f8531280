#include "termtrend/windows.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <unordered_set>

#include "termtrend/error.hpp"

namespace termtrend {

std::string TimeWindow::label() const {
  return std::to_string(start_year) + "-" + std::to_string(end_year);
}

std::optional<TimeWindow> TimeWindow::parse_label(std::string_view label) {
  const auto dash = label.find('-');
  if (dash == std::string_view::npos || dash == 0) return std::nullopt;
  TimeWindow w;
  const char* end = label.data() + label.size();
  auto [p1, e1] = std::from_chars(label.data(), label.data() + dash, w.start_year);
  if (e1 != std::errc{} || p1 != label.data() + dash) return std::nullopt;
  auto [p2, e2] = std::from_chars(label.data() + dash + 1, end, w.end_year);
  if (e2 != std::errc{} || p2 != end || dash + 1 == label.size()) return std::nullopt;
  if (w.end_year < w.start_year) return std::nullopt;
  return w;
}

std::vector<WindowSlice> build_windows(const std::vector<Observation>& observations,
                                       int width, int step, std::optional<int> anchor) {
  if (width < 1) throw UsageError("window width must be >= 1");
  if (step < 1) throw UsageError("window step must be >= 1");
  int min_year = std::numeric_limits<int>::max();
  int max_year = std::numeric_limits<int>::min();
  for (const auto& obs : observations) {
    if (!obs.year) continue;
    min_year = std::min(min_year, *obs.year);
    max_year = std::max(max_year, *obs.year);
  }
  if (min_year > max_year) throw DataError("no dated observations to partition");

  const int first = anchor.value_or(min_year);
  std::vector<WindowSlice> slices;
  for (int start = first; start + width - 1 <= max_year; start += step) {
    slices.push_back({{start, start + width - 1}, {}});
  }
  if (slices.empty()) slices.push_back({{first, first + width - 1}, {}});

  // Windows overlap; each observation lands in every window that contains it.
  for (const auto& obs : observations) {
    if (!obs.year) continue;
    for (auto& slice : slices) {
      if (slice.window.contains(*obs.year)) slice.observations.push_back(obs);
    }
  }
  return slices;
}

Vocabulary::Vocabulary(std::vector<std::string> tokens,
                       std::vector<std::size_t> obs_frequency, std::size_t min_df)
    : tokens_(std::move(tokens)), obs_frequency_(std::move(obs_frequency)), min_df_(min_df) {
  if (!obs_frequency_.empty() && obs_frequency_.size() != tokens_.size()) {
    throw UsageError("vocabulary frequency list does not match token list");
  }
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty()) throw DataError("empty token in vocabulary");
    if (!index_.emplace(tokens_[i], i).second) {
      throw DataError("duplicate token in vocabulary: '" + tokens_[i] + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocabulary::obs_frequency(std::size_t index) const {
  if (obs_frequency_.empty()) return 0;
  return obs_frequency_.at(index);
}

Vocabulary build_vocabulary(const std::vector<Observation>& observations, std::size_t min_df) {
  if (min_df < 1) throw UsageError("min_df must be >= 1");
  std::map<std::string, std::size_t> df;
  std::unordered_set<std::string_view> seen;
  for (const auto& obs : observations) {
    seen.clear();
    for (const auto& token : obs.tokens) {
      if (seen.insert(token).second) ++df[token];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [token, count] : df) {
    if (count >= min_df) kept.emplace_back(token, count);
  }
  // std::map iteration is already lexicographic, so a stable sort on
  // frequency keeps the tie order.
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> tokens;
  std::vector<std::size_t> freq;
  tokens.reserve(kept.size());
  freq.reserve(kept.size());
  for (auto& [token, count] : kept) {
    tokens.push_back(std::move(token));
    freq.push_back(count);
  }
  return Vocabulary(std::move(tokens), std::move(freq), min_df);
}

}  // namespace termtrend
