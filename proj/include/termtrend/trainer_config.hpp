#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace termtrend {

enum class Backend { kGlove, kSgns };

std::string_view backend_name(Backend backend);
std::optional<Backend> parse_backend(std::string_view name);

struct TrainerConfig {
  int dim = 100;
  int context_window = 10;  // tokens on each side
  double x_max = 100.0;
  double alpha = 0.75;
  double learning_rate = 0.05;
  int max_epochs = 200;
  Backend backend = Backend::kGlove;
  int negative_samples = 5;  // sgns only
  std::uint64_t seed = 1;

  // Throws UsageError on out-of-range values.
  void validate() const;
};

}  // namespace termtrend
