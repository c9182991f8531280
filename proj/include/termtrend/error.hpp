#pragma once

#include <stdexcept>
#include <string>

namespace termtrend {

// Process exit codes used by the CLI.
enum class ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Invalid arguments or configuration.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ExitCode::kUsage, what) {}
};

// Malformed or unusable input data.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ExitCode::kData, what) {}
};

// A word that a query needs but the model does not contain.
class OutOfVocabulary : public DataError {
 public:
  explicit OutOfVocabulary(std::string word)
      : DataError("word not in vocabulary: '" + word + "'"), word_(std::move(word)) {}
  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

// Too little data to fit anything (no vocabulary, co-occurrences or pairs).
class CorpusTooSmall : public DataError {
 public:
  explicit CorpusTooSmall(const std::string& what) : DataError(what) {}
};

// NaN/Inf encountered during training or in stored vectors.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ExitCode::kNumerical, what) {}
};

}  // namespace termtrend
