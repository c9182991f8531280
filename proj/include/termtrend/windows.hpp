#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "termtrend/corpus.hpp"

namespace termtrend {

// Inclusive year range.
struct TimeWindow {
  int start_year = 0;
  int end_year = 0;

  int width() const noexcept { return end_year - start_year + 1; }
  bool contains(int year) const noexcept { return start_year <= year && year <= end_year; }
  // "1971-1975"; also the prefix of snapshot file names.
  std::string label() const;
  static std::optional<TimeWindow> parse_label(std::string_view label);

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
  friend auto operator<=>(const TimeWindow&, const TimeWindow&) = default;
};

struct WindowSlice {
  TimeWindow window;
  std::vector<Observation> observations;
};

// Sliding windows of `width` years advanced by `step`, starting at `anchor`
// (default: the minimum observation year) while the window still ends at or
// before the maximum year. When the span is shorter than `width`, a single
// window starting at the anchor is emitted. Undated observations are ignored.
std::vector<WindowSlice> build_windows(const std::vector<Observation>& observations,
                                       int width, int step,
                                       std::optional<int> anchor = std::nullopt);

// Token index ordered by descending document frequency, ties lexicographic.
// Models loaded from disk carry a vocabulary without frequencies.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Takes tokens in index order; `obs_frequency` is either empty or parallel.
  Vocabulary(std::vector<std::string> tokens, std::vector<std::size_t> obs_frequency,
             std::size_t min_df);

  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::string& token(std::size_t index) const { return tokens_.at(index); }
  std::optional<std::size_t> find(std::string_view token) const;
  bool contains(std::string_view token) const { return find(token).has_value(); }
  // Number of distinct observations containing the token (0 when unknown).
  std::size_t obs_frequency(std::size_t index) const;
  bool has_frequencies() const noexcept { return !obs_frequency_.empty(); }
  std::size_t min_df() const noexcept { return min_df_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_ && a.obs_frequency_ == b.obs_frequency_ &&
           a.min_df_ == b.min_df_;
  }

 private:
  std::vector<std::string> tokens_;
  std::vector<std::size_t> obs_frequency_;
  std::size_t min_df_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
};

// Keeps tokens present in at least `min_df` distinct observations.
Vocabulary build_vocabulary(const std::vector<Observation>& observations, std::size_t min_df);

}  // namespace termtrend
