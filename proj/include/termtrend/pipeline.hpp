#pragma once

// End-to-end run: ingest, window, train every epoch, score, select, report.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "termtrend/trainer_config.hpp"

namespace termtrend {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
  std::vector<std::filesystem::path> corpora;  // JSON Lines paper records
  std::vector<std::filesystem::path> books;    // plaintext, one model each
  std::vector<std::string> excluded_sections;
  std::filesystem::path stopwords;
  std::size_t min_token_length = 1;
  int window_width = 5;
  int window_step = 1;
  std::optional<int> window_anchor;
  std::size_t min_df = 3;
  TrainerConfig trainer;
  std::filesystem::path keywords;
  std::size_t top_k = 20;
  std::filesystem::path output_dir;
  bool deterministic = true;
  int jobs = 1;

  // Throws UsageError for bad values or missing input paths.
  void validate() const;
  // Flag-named keys; what the manifest embeds.
  nlohmann::ordered_json to_json() const;
  // The same settings as a key=value config file.
  std::string to_config_text() const;
};

struct WindowOutcome {
  std::string label;
  std::optional<int> start_year;
  std::optional<int> end_year;
  std::size_t observations = 0;
  std::size_t vocabulary_size = 0;
  std::string status;  // "ok", "empty", "corpus too small", "no scorable test cases"
  std::vector<std::filesystem::path> snapshots;  // relative to the output dir
  std::vector<double> epoch_losses;
  std::optional<int> best_epoch;
  std::optional<double> best_degree_of_success;
  std::size_t t_effective = 0;
  std::size_t t_total = 0;
  double excluded_percent = 0.0;
  std::vector<std::filesystem::path> artifacts;  // relative, including snapshots
};

struct RunManifest {
  nlohmann::ordered_json document;
  std::vector<WindowOutcome> windows;
  std::filesystem::path path;  // <output_dir>/manifest.json
};

// Directories below output_dir that a run owns and clears before writing.
inline constexpr const char* kSnapshotDir = "snapshots";
inline constexpr const char* kBestDir = "best";
inline constexpr const char* kReportDir = "reports";

RunManifest run_pipeline(const RunConfig& config);

}  // namespace termtrend
