#pragma once

// Corpus ingestion: raw records and book plaintext to token observations.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace termtrend {

struct Document {
  std::string id;
  std::string title;
  std::string abstract;
  int year = 0;
  std::optional<std::string> venue;
};

// One co-occurrence scope: a paper's title + abstract, or a book paragraph.
struct Observation {
  std::string source_id;
  std::optional<int> year;  // absent for book corpora
  std::vector<std::string> tokens;

  // Observations that lost every token during cleaning are kept so counts
  // line up with the input, but they contribute nothing downstream.
  bool empty() const noexcept { return tokens.empty(); }

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct TokenizerConfig {
  std::unordered_set<std::string> stopwords;  // lowercase entries
  std::size_t min_token_length = 1;           // in code points
};

// Lowercases (Unicode simple case mapping), splits on whitespace and
// punctuation, drops tokens containing digits, keeps interior hyphens only,
// and removes stopwords. No stemming.
std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config);

// One token per line; '#' starts a comment line. Entries are lowercased.
std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path);

// JSON Lines with keys id, title, abstract, year and optional venue.
std::vector<Document> read_documents(const std::filesystem::path& path);

std::vector<Observation> ingest_documents(const std::filesystem::path& path,
                                          const TokenizerConfig& config);

// Paragraph-level observations from UTF-8 plaintext (a file, or every regular
// file of a directory in name order). A line starting with one of
// `excluded_sections` opens an excluded section; it closes at the next line
// that starts with the marker's first word (the next heading of that kind).
std::vector<Observation> ingest_book(const std::filesystem::path& path,
                                     const TokenizerConfig& config,
                                     const std::vector<std::string>& excluded_sections);

// Observation interchange format: JSON Lines {"source_id", "year", "tokens"}.
void write_observations(const std::filesystem::path& path,
                        const std::vector<Observation>& observations);
std::vector<Observation> read_observations(const std::filesystem::path& path);

}  // namespace termtrend
