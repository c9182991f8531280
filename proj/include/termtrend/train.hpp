#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "termtrend/corpus.hpp"
#include "termtrend/model.hpp"
#include "termtrend/trainer_config.hpp"
#include "termtrend/windows.hpp"

namespace termtrend {

// Persists one epoch snapshot and returns where it went.
using SnapshotSink = std::function<std::filesystem::path(const EmbeddingModel&)>;

// Writes "<dir>/<label>_epoch<NNN>.vec".
SnapshotSink directory_sink(std::filesystem::path dir);

struct SnapshotRef {
  int epoch = 0;
  std::filesystem::path path;
  double loss = 0.0;
};

struct TrainRequest {
  const std::vector<Observation>& observations;
  const Vocabulary& vocab;
  const TrainerConfig& config;
  std::string label;
  std::optional<TimeWindow> window;
};

// Runs config.max_epochs epochs of the configured backend and hands a model
// to `sink` after each one. Throws DataError("corpus too small") when there
// is nothing to train on.
std::vector<SnapshotRef> train(const TrainRequest& request, const SnapshotSink& sink);

}  // namespace termtrend
