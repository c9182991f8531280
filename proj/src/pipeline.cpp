#include "termtrend/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "termtrend/corpus.hpp"
#include "termtrend/error.hpp"
#include "termtrend/eval.hpp"
#include "termtrend/model.hpp"
#include "termtrend/train.hpp"
#include "termtrend/windows.hpp"

namespace termtrend {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void RunConfig::validate() const {
  if (corpora.empty() && books.empty()) throw UsageError("no corpus given (--corpus or --book)");
  auto require = [](const fs::path& p, const char* what) {
    std::error_code ec;
    if (p.empty() || !fs::exists(p, ec)) {
      throw UsageError(std::string(what) + " not found: '" + p.string() + "'");
    }
  };
  for (const auto& p : corpora) require(p, "corpus");
  for (const auto& p : books) require(p, "book corpus");
  require(stopwords, "stopwords file");
  require(keywords, "keywords file");
  if (output_dir.empty()) throw UsageError("no output directory given (--out)");
  if (window_width < 1) throw UsageError("window width must be >= 1");
  if (window_step < 1) throw UsageError("window step must be >= 1");
  if (min_df < 1) throw UsageError("min-df must be >= 1");
  if (top_k < 1) throw UsageError("top must be >= 1");
  if (jobs < 1) throw UsageError("jobs must be >= 1");
  trainer.validate();
}

namespace {

std::vector<std::string> path_strings(const std::vector<fs::path>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) out.push_back(p.string());
  return out;
}

}  // namespace

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["corpus"] = path_strings(corpora);
  j["book"] = path_strings(books);
  j["exclude-section"] = excluded_sections;
  j["stopwords"] = stopwords.string();
  j["min-token-length"] = min_token_length;
  j["window-width"] = window_width;
  j["window-step"] = window_step;
  j["window-anchor"] = window_anchor ? ordered_json(*window_anchor) : ordered_json(nullptr);
  j["min-df"] = min_df;
  j["backend"] = std::string(backend_name(trainer.backend));
  j["dim"] = trainer.dim;
  j["context-window"] = trainer.context_window;
  j["x-max"] = trainer.x_max;
  j["alpha"] = trainer.alpha;
  j["learning-rate"] = trainer.learning_rate;
  j["epochs"] = trainer.max_epochs;
  j["negative-samples"] = trainer.negative_samples;
  j["seed"] = trainer.seed;
  j["keywords"] = keywords.string();
  j["top"] = top_k;
  j["out"] = output_dir.string();
  j["deterministic"] = deterministic;
  j["jobs"] = jobs;
  return j;
}

std::string RunConfig::to_config_text() const {
  std::ostringstream out;
  out << "# resolved termtrend run configuration\n";
  const auto settings = to_json();
  for (const auto& [key, value] : settings.items()) {
    if (value.is_null()) continue;
    if (value.is_array()) {
      if (value.empty()) continue;
      out << key << "=[";
      for (std::size_t i = 0; i < value.size(); ++i) {
        out << (i ? "," : "") << value[i].dump();
      }
      out << "]\n";
    } else {
      out << key << '=' << value.dump() << '\n';
    }
  }
  return out.str();
}

namespace {

// Re-throws a pipeline failure with the stage and input that caused it.
template <typename Fn>
auto in_stage(const std::string& stage, const std::string& input, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), "stage " + stage + " [" + input + "]: " + e.what());
  } catch (const fs::filesystem_error& e) {
    throw Error(ExitCode::kData, "stage " + stage + " [" + input + "]: " + e.what());
  }
}

struct Job {
  std::string label;
  std::optional<TimeWindow> window;
  std::vector<Observation> observations;
};

std::string book_label(const fs::path& path) {
  std::string stem = path.stem().string();
  for (auto& c : stem) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '-';
    if (!ok) c = '_';
  }
  return "book-" + stem;
}

WindowOutcome run_job(const Job& job, const RunConfig& config,
                      const std::vector<Keyword>& keywords) {
  WindowOutcome outcome;
  outcome.label = job.label;
  if (job.window) {
    outcome.start_year = job.window->start_year;
    outcome.end_year = job.window->end_year;
  }
  outcome.observations = job.observations.size();
  if (job.observations.empty()) {
    outcome.status = "empty";
    return outcome;
  }
  const auto vocab = in_stage("vocabulary", job.label,
                              [&] { return build_vocabulary(job.observations, config.min_df); });
  outcome.vocabulary_size = vocab.size();

  const fs::path out = config.output_dir;
  std::vector<SnapshotRef> snapshots;
  try {
    snapshots = train({job.observations, vocab, config.trainer, job.label, job.window},
                      directory_sink(out / kSnapshotDir));
  } catch (const CorpusTooSmall&) {
    // A sparse window is a finding, not a failed run.
    outcome.status = "corpus too small";
    return outcome;
  } catch (const Error& e) {
    throw Error(e.code(), "stage train [" + job.label + "]: " + e.what());
  }
  std::vector<fs::path> paths;
  for (const auto& s : snapshots) {
    paths.push_back(s.path);
    outcome.snapshots.push_back(fs::relative(s.path, out));
    outcome.epoch_losses.push_back(s.loss);
  }
  outcome.artifacts = outcome.snapshots;

  const auto selection = in_stage("select", job.label, [&] {
    return select_best_epoch(paths, keywords, config.top_k);
  });
  const fs::path reports = out / kReportDir;
  fs::create_directories(reports);
  const fs::path epoch_table = reports / (job.label + "_epochs.csv");
  write_epoch_table(epoch_table, selection.table);
  outcome.artifacts.push_back(fs::relative(epoch_table, out));

  if (!selection.best) {
    outcome.status = "no scorable test cases";
    return outcome;
  }
  const auto& best = *selection.best;
  outcome.best_epoch = best.epoch;
  outcome.best_degree_of_success = best.degree_of_success;

  const fs::path best_dir = out / kBestDir;
  fs::create_directories(best_dir);
  const fs::path best_path = best_dir / best.path.filename();
  fs::copy_file(best.path, best_path, fs::copy_options::overwrite_existing);
  outcome.artifacts.push_back(fs::relative(best_path, out));

  const auto suite = in_stage("eval", job.label, [&] {
    return score_suite(keywords, load_model(best_path), config.top_k);
  });
  outcome.t_effective = suite.t_effective;
  outcome.t_total = suite.t_total();
  outcome.excluded_percent = suite.exclusion_percent();
  const fs::path report = reports / (job.label + "_suite.csv");
  const fs::path summary = reports / (job.label + "_summary.csv");
  write_suite_report(report, suite);
  write_suite_summary(summary, suite);
  outcome.artifacts.push_back(fs::relative(report, out));
  outcome.artifacts.push_back(fs::relative(summary, out));
  outcome.status = "ok";
  return outcome;
}

std::vector<WindowOutcome> run_jobs(const std::vector<Job>& jobs, const RunConfig& config,
                                    const std::vector<Keyword>& keywords) {
  std::vector<WindowOutcome> outcomes(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        outcomes[i] = run_job(jobs[i], config, keywords);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), jobs.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  // Report the chronologically first failure regardless of finishing order.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outcomes;
}

ordered_json outcome_json(const WindowOutcome& w) {
  auto opt = [](const auto& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  ordered_json j;
  j["label"] = w.label;
  j["start_year"] = opt(w.start_year);
  j["end_year"] = opt(w.end_year);
  j["status"] = w.status;
  j["observations"] = w.observations;
  j["vocabulary_size"] = w.vocabulary_size;
  j["best_epoch"] = opt(w.best_epoch);
  j["D"] = opt(w.best_degree_of_success);
  j["T_effective"] = w.t_effective;
  j["T_total"] = w.t_total;
  j["excluded_percent"] = w.excluded_percent;
  j["epoch_losses"] = w.epoch_losses;
  j["artifacts"] = path_strings(w.artifacts);
  return j;
}

}  // namespace

RunManifest run_pipeline(const RunConfig& config) {
  config.validate();
  const fs::path out = config.output_dir;
  fs::create_directories(out);
  const fs::path marker = out / ".partial";
  {
    std::ofstream m(marker);
    m << "run in progress\n";
  }
  try {
    for (const char* owned : {kSnapshotDir, kBestDir, kReportDir}) fs::remove_all(out / owned);
    fs::remove(out / "manifest.json");

    TokenizerConfig tokenizer;
    tokenizer.stopwords = in_stage("ingest", config.stopwords.string(),
                                   [&] { return load_stopwords(config.stopwords); });
    tokenizer.min_token_length = config.min_token_length;
    const auto keywords = in_stage("ingest", config.keywords.string(),
                                   [&] { return read_keywords(config.keywords); });
    if (keywords.empty()) throw DataError("keywords file has no keywords");

    std::vector<Job> jobs;
    std::size_t observation_count = 0;
    std::size_t empty_count = 0;
    for (const auto& book : config.books) {
      auto obs = in_stage("ingest", book.string(), [&] {
        return ingest_book(book, tokenizer, config.excluded_sections);
      });
      observation_count += obs.size();
      empty_count += std::count_if(obs.begin(), obs.end(), [](const auto& o) { return o.empty(); });
      jobs.push_back({book_label(book), std::nullopt, std::move(obs)});
    }
    if (!config.corpora.empty()) {
      std::vector<Observation> dated;
      for (const auto& corpus : config.corpora) {
        auto obs = in_stage("ingest", corpus.string(),
                            [&] { return ingest_documents(corpus, tokenizer); });
        dated.insert(dated.end(), std::make_move_iterator(obs.begin()),
                     std::make_move_iterator(obs.end()));
      }
      observation_count += dated.size();
      empty_count +=
          std::count_if(dated.begin(), dated.end(), [](const auto& o) { return o.empty(); });
      auto slices = in_stage("windows", "corpus", [&] {
        return build_windows(dated, config.window_width, config.window_step, config.window_anchor);
      });
      for (auto& slice : slices) {
        jobs.push_back({slice.window.label(), slice.window, std::move(slice.observations)});
      }
    }
    std::set<std::string> labels;
    for (const auto& job : jobs) {
      if (!labels.insert(job.label).second) {
        throw UsageError("two inputs map to the model label '" + job.label + "'");
      }
    }

    RunManifest manifest;
    manifest.windows = run_jobs(jobs, config, keywords);

    const fs::path resolved = out / "resolved.conf";
    {
      std::ofstream conf(resolved, std::ios::binary);
      conf << config.to_config_text();
      if (!conf) throw DataError("cannot write " + resolved.string());
    }

    ordered_json& doc = manifest.document;
    doc["tool"] = "termtrend";
    doc["version"] = kToolVersion;
    doc["config"] = config.to_json();
    doc["corpus"] = {{"observations", observation_count}, {"empty_observations", empty_count}};
    doc["windows"] = ordered_json::array();
    std::vector<std::string> artifacts{"resolved.conf"};
    for (const auto& w : manifest.windows) {
      doc["windows"].push_back(outcome_json(w));
      for (const auto& a : w.artifacts) artifacts.push_back(a.string());
    }
    std::sort(artifacts.begin(), artifacts.end());
    doc["artifacts"] = artifacts;

    manifest.path = out / "manifest.json";
    std::ofstream m(manifest.path, std::ios::binary);
    m << doc.dump(2) << '\n';
    if (!m) throw DataError("cannot write " + manifest.path.string());
    m.close();
    fs::remove(marker);
    return manifest;
  } catch (const std::exception& e) {
    std::ofstream m(marker);
    m << "run failed: " << e.what() << '\n';
    throw;
  }
}

}  // namespace termtrend
