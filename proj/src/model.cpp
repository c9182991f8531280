#include "termtrend/model.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "termtrend/error.hpp"

namespace termtrend {

void EmbeddingModel::validate() const {
  if (vectors.size() != vocabulary.size() * dim) {
    throw DataError("model '" + label + "': vector matrix does not match vocabulary x dim");
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (!std::isfinite(vectors[i])) {
      throw NumericalError("model '" + label + "': non-finite value in row for '" +
                           vocabulary.token(i / dim) + "'");
    }
  }
}

void save_model(const EmbeddingModel& model, const std::filesystem::path& path) {
  model.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file: " + path.string());
  out << model.vocabulary.size() << ' ' << model.dim << '\n';
  char buf[64];
  for (std::size_t i = 0; i < model.vocabulary.size(); ++i) {
    out << model.vocabulary.token(i);
    for (float v : model.row(i)) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
      out << ' ';
      out.write(buf, end - buf);
    }
    out << '\n';
  }
  if (!out) throw DataError("error while writing model file: " + path.string());
}

EmbeddingModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read model file: " + path.string());
  const std::string where = path.string() + ": ";

  std::string line;
  std::size_t vocab_size = 0;
  std::size_t dim = 0;
  {
    if (!std::getline(in, line)) throw DataError(where + "missing header");
    std::istringstream header(line);
    std::string extra;
    if (!(header >> vocab_size >> dim) || (header >> extra) || dim == 0) {
      throw DataError(where + "malformed header '" + line + "'");
    }
  }

  EmbeddingModel model;
  model.dim = dim;
  model.vectors.reserve(vocab_size * dim);
  std::vector<std::string> words;
  words.reserve(vocab_size);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (words.size() == vocab_size) {
      throw DataError(where + "more vector lines than the header's " +
                      std::to_string(vocab_size));
    }
    const std::string here = where + "line " + std::to_string(line_no) + ": ";
    const auto space = line.find(' ');
    if (space == 0 || space == std::string::npos) throw DataError(here + "malformed row");
    words.push_back(line.substr(0, space));
    const char* p = line.data() + space;
    const char* end = line.data() + line.size();
    std::size_t count = 0;
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      float v = 0.0f;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{}) throw DataError(here + "unparseable value");
      if (!std::isfinite(v)) throw DataError(here + "non-finite value");
      model.vectors.push_back(v);
      ++count;
      p = next;
    }
    if (count != dim) {
      throw DataError(here + "expected " + std::to_string(dim) + " values, found " +
                      std::to_string(count));
    }
  }
  if (words.size() != vocab_size) {
    throw DataError(where + "header declares " + std::to_string(vocab_size) +
                    " words but file has " + std::to_string(words.size()));
  }
  model.vocabulary = Vocabulary(std::move(words), {}, 0);

  const std::string file_name = path.filename().string();
  if (auto name = parse_snapshot_name(file_name)) {
    model.label = name->label;
    model.epoch = name->epoch;
    model.window = TimeWindow::parse_label(name->label);
  } else {
    model.label = path.stem().string();
  }
  return model;
}

std::string snapshot_file_name(const std::string& label, int epoch) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_epoch%03d.vec", epoch);
  return label + buf;
}

std::optional<SnapshotName> parse_snapshot_name(const std::string& file_name) {
  static const std::regex pattern(R"(^(.+)_epoch([0-9]{3,})\.vec$)");
  std::smatch m;
  if (!std::regex_match(file_name, m, pattern)) return std::nullopt;
  return SnapshotName{m[1].str(), std::stoi(m[2].str())};
}

}  // namespace termtrend
