#include "termtrend/cooccurrence.hpp"

#include <algorithm>
#include <unordered_map>

#include "termtrend/error.hpp"

namespace termtrend {

CooccurrenceTable::CooccurrenceTable(std::size_t vocab_size,
                                     std::vector<CooccurrenceEntry> entries)
    : vocab_size_(vocab_size), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
}

double CooccurrenceTable::weight(std::size_t row, std::size_t col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{row, col},
                             [](const CooccurrenceEntry& e, const auto& key) {
                               return e.row != key.first ? e.row < key.first
                                                         : e.col < key.second;
                             });
  if (it == entries_.end() || it->row != row || it->col != col) return 0.0;
  return it->weight;
}

double CooccurrenceTable::total_weight() const {
  double total = 0.0;
  for (const auto& e : entries_) total += e.weight;
  return total;
}

CooccurrenceTable build_cooccurrence(const std::vector<Observation>& observations,
                                     const Vocabulary& vocab, int context_window) {
  if (context_window < 1) throw UsageError("context window must be >= 1");
  const auto n = static_cast<std::uint64_t>(vocab.size());
  // Keyed by row * n + col. Each key's sum accumulates in corpus order, so
  // the result does not depend on hash iteration order.
  std::unordered_map<std::uint64_t, double> acc;
  std::vector<std::int64_t> ids;
  for (const auto& obs : observations) {
    ids.clear();
    for (const auto& token : obs.tokens) {
      auto idx = vocab.find(token);
      ids.push_back(idx ? static_cast<std::int64_t>(*idx) : -1);
    }
    for (std::size_t p = 0; p < ids.size(); ++p) {
      if (ids[p] < 0) continue;
      const std::size_t last = std::min(ids.size() - 1, p + static_cast<std::size_t>(context_window));
      for (std::size_t q = p + 1; q <= last; ++q) {
        if (ids[q] < 0 || ids[q] == ids[p]) continue;
        const double w = 1.0 / static_cast<double>(q - p);
        const auto a = static_cast<std::uint64_t>(ids[p]);
        const auto b = static_cast<std::uint64_t>(ids[q]);
        acc[a * n + b] += w;
        acc[b * n + a] += w;
      }
    }
  }
  std::vector<CooccurrenceEntry> entries;
  entries.reserve(acc.size());
  for (const auto& [key, weight] : acc) {
    entries.push_back({static_cast<std::uint32_t>(key / n), static_cast<std::uint32_t>(key % n),
                       weight});
  }
  return CooccurrenceTable(vocab.size(), std::move(entries));
}

}  // namespace termtrend
