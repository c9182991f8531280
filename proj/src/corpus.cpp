#include "termtrend/corpus.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <set>
#include <unordered_map>

#include "termtrend/error.hpp"

namespace termtrend {
namespace {

enum class CharClass { kSeparator, kLetter, kDigit, kHyphen };

CharClass classify(UChar32 c) {
  if (c < 0) return CharClass::kSeparator;  // malformed UTF-8
  if (c == U'-' || c == 0x2010 || c == 0x2011) return CharClass::kHyphen;
  switch (u_charType(c)) {
    case U_UPPERCASE_LETTER:
    case U_LOWERCASE_LETTER:
    case U_TITLECASE_LETTER:
    case U_MODIFIER_LETTER:
    case U_OTHER_LETTER:
    case U_NON_SPACING_MARK:
    case U_ENCLOSING_MARK:
    case U_COMBINING_SPACING_MARK:
      return CharClass::kLetter;
    case U_DECIMAL_DIGIT_NUMBER:
    case U_LETTER_NUMBER:
    case U_OTHER_NUMBER:
      return CharClass::kDigit;
    default:
      return CharClass::kSeparator;
  }
}

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  U8_APPEND_UNSAFE(buf, len, c);
  out.append(buf, static_cast<std::size_t>(len));
}

struct RawToken {
  std::string text;
  std::size_t code_points = 0;
  bool has_digit = false;
};

void finish_token(RawToken& raw, const TokenizerConfig& config,
                  std::vector<std::string>& out) {
  // Hyphens are single bytes, so byte-level trimming is safe.
  std::string& s = raw.text;
  std::size_t begin = s.find_first_not_of('-');
  if (begin != std::string::npos && !raw.has_digit) {
    std::size_t end = s.find_last_not_of('-');
    std::size_t trimmed_cps = raw.code_points - begin - (s.size() - 1 - end);
    std::string token = s.substr(begin, end - begin + 1);
    if (trimmed_cps >= config.min_token_length && !config.stopwords.contains(token)) {
      out.push_back(std::move(token));
    }
  }
  raw = RawToken{};
}

std::string trim(std::string_view line) {
  const auto* ws = " \t\r\n\f\v";
  auto b = line.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = line.find_last_not_of(ws);
  return std::string(line.substr(b, e - b + 1));
}

bool is_ascii_alnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// "Chapter 14" matches "Chapter 14: Mathematical Foundations" but not "Chapter 145".
bool starts_with_marker(const std::string& line, const std::string& marker) {
  if (!line.starts_with(marker)) return false;
  return line.size() == marker.size() || !is_ascii_alnum(line[marker.size()]);
}

bool starts_with_word(const std::string& line, const std::string& word) {
  if (!line.starts_with(word)) return false;
  return line.size() == word.size() || line[word.size()] == ' ' || line[word.size()] == '\t';
}

std::string first_word(const std::string& marker) {
  return marker.substr(0, marker.find_first_of(" \t"));
}

std::vector<std::filesystem::path> book_files(const std::filesystem::path& path) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
  }
  return {path};
}

void ingest_book_file(const std::filesystem::path& file, const TokenizerConfig& config,
                      const std::vector<std::string>& markers,
                      std::vector<Observation>& out) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot read book file: " + file.string());

  const std::string name = file.filename().string();
  std::size_t paragraph_no = 0;
  std::string paragraph;
  auto flush = [&] {
    if (paragraph.empty()) return;
    ++paragraph_no;
    out.push_back({name + ":" + std::to_string(paragraph_no), std::nullopt,
                   tokenize(paragraph, config)});
    paragraph.clear();
  };

  std::optional<std::size_t> open;  // index of the marker whose section we are in
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (open && starts_with_word(stripped, first_word(markers[*open]))) {
      open.reset();
    }
    std::vector<std::size_t> matched;
    for (std::size_t m = 0; m < markers.size(); ++m) {
      if (starts_with_marker(stripped, markers[m])) matched.push_back(m);
    }
    if (matched.size() > 1 || (open && !matched.empty())) {
      throw DataError(file.string() + ":" + std::to_string(line_no) +
                      ": overlapping exclusion markers at '" + stripped + "'");
    }
    if (!matched.empty()) {
      flush();
      open = matched.front();
      continue;
    }
    if (open) continue;
    if (stripped.empty()) {
      flush();
    } else {
      if (!paragraph.empty()) paragraph.push_back('\n');
      paragraph += line;
    }
  }
  if (in.bad()) throw DataError("error while reading book file: " + file.string());
  flush();
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
  std::vector<std::string> out;
  RawToken raw;
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    const CharClass cls = classify(c);
    if (cls == CharClass::kSeparator) {
      if (!raw.text.empty()) finish_token(raw, config, out);
      continue;
    }
    if (cls == CharClass::kHyphen) {
      raw.text.push_back('-');
    } else {
      raw.has_digit |= cls == CharClass::kDigit;
      append_utf8(raw.text, u_foldCase(c, U_FOLD_CASE_DEFAULT));
    }
    ++raw.code_points;
  }
  if (!raw.text.empty()) finish_token(raw, config, out);
  return out;
}

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read stopwords file: " + path.string());
  std::unordered_set<std::string> words;
  const TokenizerConfig no_filter;
  std::string line;
  while (std::getline(in, line)) {
    const std::string entry = trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    // Run entries through the same lowercasing as the text they filter.
    for (auto& token : tokenize(entry, no_filter)) words.insert(std::move(token));
  }
  return words;
}

std::vector<Document> read_documents(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read corpus file: " + path.string());

  std::vector<Document> docs;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(where + "malformed JSON (" + e.what() + ")");
    }
    if (!j.is_object()) throw DataError(where + "expected a JSON object");
    auto require_string = [&](const char* key) -> std::string {
      auto it = j.find(key);
      if (it == j.end() || !it->is_string()) {
        throw DataError(where + "missing or non-string field '" + key + "'");
      }
      return it->get<std::string>();
    };
    Document doc;
    doc.id = require_string("id");
    doc.title = require_string("title");
    doc.abstract = require_string("abstract");
    auto year = j.find("year");
    if (year == j.end() || !year->is_number_integer()) {
      throw DataError(where + "missing or non-integer field 'year'");
    }
    doc.year = year->get<int>();
    if (auto venue = j.find("venue"); venue != j.end() && !venue->is_null()) {
      if (!venue->is_string()) throw DataError(where + "non-string field 'venue'");
      doc.venue = venue->get<std::string>();
    }
    if (doc.id.empty()) throw DataError(where + "empty id");
    if (doc.year <= 0) throw DataError(where + "year must be positive");
    if (!seen.insert(doc.id).second) throw DataError(where + "duplicate id '" + doc.id + "'");
    docs.push_back(std::move(doc));
  }
  if (in.bad()) throw DataError("error while reading corpus file: " + path.string());
  return docs;
}

std::vector<Observation> ingest_documents(const std::filesystem::path& path,
                                          const TokenizerConfig& config) {
  std::vector<Observation> out;
  for (const auto& doc : read_documents(path)) {
    out.push_back({doc.id, doc.year, tokenize(doc.title + " " + doc.abstract, config)});
  }
  return out;
}

std::vector<Observation> ingest_book(const std::filesystem::path& path,
                                     const TokenizerConfig& config,
                                     const std::vector<std::string>& excluded_sections) {
  std::vector<std::string> markers;
  for (const auto& m : excluded_sections) {
    std::string marker = trim(m);
    if (marker.empty()) throw UsageError("empty section exclusion marker");
    if (std::find(markers.begin(), markers.end(), marker) != markers.end()) {
      throw DataError("overlapping exclusion markers: '" + marker + "' given twice");
    }
    markers.push_back(std::move(marker));
  }
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    throw DataError("cannot read book corpus: " + path.string());
  }
  std::vector<Observation> out;
  for (const auto& file : book_files(path)) ingest_book_file(file, config, markers, out);
  return out;
}

void write_observations(const std::filesystem::path& path,
                        const std::vector<Observation>& observations) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write observations file: " + path.string());
  for (const auto& obs : observations) {
    nlohmann::json j;
    j["source_id"] = obs.source_id;
    j["year"] = obs.year ? nlohmann::json(*obs.year) : nlohmann::json(nullptr);
    j["tokens"] = obs.tokens;
    out << j.dump() << '\n';
  }
  if (!out) throw DataError("error while writing observations file: " + path.string());
}

std::vector<Observation> read_observations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read observations file: " + path.string());
  std::vector<Observation> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Observation obs;
      obs.source_id = j.at("source_id").get<std::string>();
      if (const auto& y = j.at("year"); !y.is_null()) obs.year = y.get<int>();
      obs.tokens = j.at("tokens").get<std::vector<std::string>>();
      out.push_back(std::move(obs));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": malformed observation (" + e.what() + ")");
    }
  }
  return out;
}

}  // namespace termtrend
