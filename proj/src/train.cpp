#include "termtrend/train.hpp"

#include "termtrend/cooccurrence.hpp"
#include "termtrend/error.hpp"
#include "termtrend/glove.hpp"
#include "termtrend/sgns.hpp"

namespace termtrend {

std::string_view backend_name(Backend backend) {
  return backend == Backend::kGlove ? "glove" : "sgns";
}

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "glove") return Backend::kGlove;
  if (name == "sgns") return Backend::kSgns;
  return std::nullopt;
}

void TrainerConfig::validate() const {
  if (dim < 1) throw UsageError("dim must be >= 1");
  if (context_window < 1) throw UsageError("context window must be >= 1");
  if (!(x_max > 0.0)) throw UsageError("x_max must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw UsageError("alpha must be in (0, 1]");
  if (!(learning_rate > 0.0)) throw UsageError("learning rate must be positive");
  if (max_epochs < 1) throw UsageError("epochs must be >= 1");
  if (negative_samples < 0) throw UsageError("negative samples must be >= 0");
}

SnapshotSink directory_sink(std::filesystem::path dir) {
  return [dir = std::move(dir)](const EmbeddingModel& model) {
    std::filesystem::create_directories(dir);
    auto path = dir / snapshot_file_name(model.label, model.epoch);
    save_model(model, path);
    return path;
  };
}

std::vector<SnapshotRef> train(const TrainRequest& request, const SnapshotSink& sink) {
  const auto& config = request.config;
  config.validate();
  if (request.vocab.empty()) throw CorpusTooSmall(request.label + ": corpus too small (empty vocabulary)");

  EmbeddingModel model;
  model.vocabulary = request.vocab;
  model.dim = static_cast<std::size_t>(config.dim);
  model.label = request.label;
  model.window = request.window;
  model.backend = config.backend;

  std::vector<SnapshotRef> snapshots;
  auto emit = [&](int epoch, double loss, std::vector<float> vectors) {
    model.epoch = epoch;
    model.vectors = std::move(vectors);
    model.validate();
    snapshots.push_back({epoch, sink(model), loss});
  };

  if (config.backend == Backend::kGlove) {
    const auto table = build_cooccurrence(request.observations, request.vocab,
                                          config.context_window);
    if (table.empty()) {
      throw CorpusTooSmall(request.label + ": corpus too small (no co-occurrences)");
    }
    auto state = init_glove_state(request.vocab.size(), config);
    for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
      double loss;
      try {
        loss = glove_epoch(state, table, config);
      } catch (const NumericalError& e) {
        throw NumericalError(request.label + " epoch " + std::to_string(epoch) + ": " + e.what());
      }
      emit(epoch, loss, glove_vectors(state));
    }
  } else {
    if (count_sgns_pairs(request.observations, request.vocab, config.context_window) == 0) {
      throw CorpusTooSmall(request.label + ": corpus too small (no context pairs)");
    }
    auto state = init_sgns_state(request.observations, request.vocab, config);
    for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
      double loss;
      try {
        loss = sgns_epoch(state, request.observations, request.vocab, config);
      } catch (const NumericalError& e) {
        throw NumericalError(request.label + " epoch " + std::to_string(epoch) + ": " + e.what());
      }
      emit(epoch, loss, sgns_vectors(state));
    }
  }
  return snapshots;
}

}  // namespace termtrend
