#include "termtrend/trend.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "termtrend/error.hpp"
#include "text_format.hpp"

namespace termtrend {

std::vector<TrendSeries> trend(const std::vector<WindowModel>& models,
                               const QueryExpression& target,
                               const std::vector<std::string>& prefixes) {
  if (models.empty()) throw UsageError("trend needs at least one window model");
  if (prefixes.empty()) throw UsageError("trend needs at least one prefix");
  for (std::size_t i = 1; i < models.size(); ++i) {
    if (!(models[i - 1].window < models[i].window)) {
      throw UsageError("window models are not in chronological order");
    }
  }
  std::vector<TrendSeries> series;
  for (const auto& prefix : prefixes) series.push_back({target, prefix, {}});

  for (const auto& [window, model] : models) {
    bool usable = std::all_of(target.terms().begin(), target.terms().end(),
                              [&](const QueryTerm& t) { return model.vocabulary.contains(t.word); });
    usable = usable && !compose(target, model).zero;
    for (auto& s : series) {
      TrendPoint point{window, std::nullopt, std::nullopt};
      if (usable) {
        if (auto hit = prefix_min_rank(target, model, s.prefix)) {
          point.min_rank = hit->rank;
          point.matched_word = hit->word;
        }
      }
      s.points.push_back(std::move(point));
    }
  }
  return series;
}

std::vector<WindowModel> load_window_models(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw DataError("models directory not found: " + dir.string());
  }
  std::map<TimeWindow, std::filesystem::path> found;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto name = parse_snapshot_name(entry.path().filename().string());
    if (!name) continue;
    auto window = TimeWindow::parse_label(name->label);
    if (!window) continue;
    if (!found.emplace(*window, entry.path()).second) {
      throw DataError("several snapshots for window " + window->label() + " in " + dir.string() +
                      "; use the directory of selected models");
    }
  }
  if (found.empty()) throw DataError("no window models in " + dir.string());
  std::vector<WindowModel> out;
  for (const auto& [window, path] : found) out.push_back({window, load_model(path)});
  return out;
}

void export_trend_csv(const std::vector<TrendSeries>& series, const std::filesystem::path& path) {
  if (series.empty()) throw UsageError("no trend series to export");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write trend file: " + path.string());
  out << "window_start,window_end,prefix,min_rank,matched_word\n";
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      out << p.window.start_year << ',' << p.window.end_year << ',' << detail::csv_field(s.prefix)
          << ',' << (p.min_rank ? std::to_string(*p.min_rank) : "") << ','
          << detail::csv_field(p.matched_word.value_or("")) << '\n';
    }
  }
  if (!out) throw DataError("error while writing trend file: " + path.string());
}

std::vector<TrendSeries> read_trend_csv(const std::filesystem::path& path,
                                        const QueryExpression& target) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read trend file: " + path.string());
  std::string line;
  if (!std::getline(in, line) ||
      detail::split_csv(line) != std::vector<std::string>{"window_start", "window_end", "prefix",
                                                          "min_rank", "matched_word"}) {
    throw DataError(path.string() + ": not a trend CSV");
  }
  std::vector<TrendSeries> series;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 5) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected 5 fields");
    }
    TrendPoint point;
    try {
      point.window = {std::stoi(f[0]), std::stoi(f[1])};
      if (!f[3].empty()) point.min_rank = std::stoull(f[3]);
    } catch (const std::exception&) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": bad number");
    }
    if (!f[4].empty()) point.matched_word = f[4];
    if (series.empty() || series.back().prefix != f[2]) series.push_back({target, f[2], {}});
    series.back().points.push_back(std::move(point));
  }
  return series;
}

}  // namespace termtrend
