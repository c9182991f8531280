#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "termtrend/trainer_config.hpp"
#include "termtrend/windows.hpp"

namespace termtrend {

struct EmbeddingModel {
  Vocabulary vocabulary;
  std::size_t dim = 0;
  std::vector<float> vectors;  // vocabulary.size() x dim, rows in index order
  int epoch = 0;
  std::string label;  // window label ("1971-1975") or corpus name
  std::optional<TimeWindow> window;
  std::optional<Backend> backend;  // unknown for models read from disk

  std::span<const float> row(std::size_t index) const {
    return {vectors.data() + index * dim, dim};
  }
  // Throws unless the shape matches and every entry is finite.
  void validate() const;
};

// Text format: "<vocab_size> <dim>" then one "<word> <floats...>" line per
// row. Floats are written with 9 significant digits, which reproduces every
// float exactly on reading.
void save_model(const EmbeddingModel& model, const std::filesystem::path& path);

// Label, epoch and window are recovered from the snapshot file name when it
// follows the "<label>_epoch<NNN>.vec" convention.
EmbeddingModel load_model(const std::filesystem::path& path);

std::string snapshot_file_name(const std::string& label, int epoch);

struct SnapshotName {
  std::string label;
  int epoch = 0;
};
std::optional<SnapshotName> parse_snapshot_name(const std::string& file_name);

}  // namespace termtrend
