#pragma once

#include <cstdint>
#include <vector>

#include "termtrend/corpus.hpp"
#include "termtrend/windows.hpp"

namespace termtrend {

struct CooccurrenceEntry {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  double weight = 0.0;

  friend bool operator==(const CooccurrenceEntry&, const CooccurrenceEntry&) = default;
};

// Sparse symmetric word-word co-occurrence weights. Both (i, j) and (j, i)
// are stored, sorted by (row, col); the diagonal and zeros are never stored.
class CooccurrenceTable {
 public:
  CooccurrenceTable() = default;
  CooccurrenceTable(std::size_t vocab_size, std::vector<CooccurrenceEntry> entries);

  std::size_t vocab_size() const noexcept { return vocab_size_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<CooccurrenceEntry>& entries() const noexcept { return entries_; }
  double weight(std::size_t row, std::size_t col) const;  // 0 when absent
  double total_weight() const;

 private:
  std::size_t vocab_size_ = 0;
  std::vector<CooccurrenceEntry> entries_;
};

// Each pair of in-vocabulary tokens at distance d <= context_window within
// one observation adds 1/d to both mirror entries. Out-of-vocabulary tokens
// keep their positions for the distance count.
CooccurrenceTable build_cooccurrence(const std::vector<Observation>& observations,
                                     const Vocabulary& vocab, int context_window);

}  // namespace termtrend
