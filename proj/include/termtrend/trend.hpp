#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "termtrend/model.hpp"
#include "termtrend/query.hpp"
#include "termtrend/windows.hpp"

namespace termtrend {

struct TrendPoint {
  TimeWindow window;
  std::optional<std::size_t> min_rank;  // absent: target or prefix not in this window
  std::optional<std::string> matched_word;

  friend bool operator==(const TrendPoint&, const TrendPoint&) = default;
};

struct TrendSeries {
  QueryExpression target;
  std::string prefix;
  std::vector<TrendPoint> points;  // chronological

  friend bool operator==(const TrendSeries&, const TrendSeries&) = default;
};

struct WindowModel {
  TimeWindow window;
  EmbeddingModel model;
};

// One series per prefix; each point is prefix_min_rank in that window's model.
std::vector<TrendSeries> trend(const std::vector<WindowModel>& models,
                               const QueryExpression& target,
                               const std::vector<std::string>& prefixes);

// Finds one "<start>-<end>_epoch<NNN>.vec" model per window in `dir`, sorted
// chronologically. Several epochs for one window is an error: point this at
// a directory of selected models, not raw snapshots.
std::vector<WindowModel> load_window_models(const std::filesystem::path& dir);

// window_start,window_end,prefix,min_rank,matched_word
void export_trend_csv(const std::vector<TrendSeries>& series, const std::filesystem::path& path);
// Rebuilds the series of a trend CSV; the target is not stored, so the
// caller supplies it.
std::vector<TrendSeries> read_trend_csv(const std::filesystem::path& path,
                                        const QueryExpression& target);

}  // namespace termtrend
