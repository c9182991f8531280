// termtrend: train diachronic word embeddings, score them against a keyword
// suite, and query terms and their rank trends.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "termtrend/corpus.hpp"
#include "termtrend/error.hpp"
#include "termtrend/eval.hpp"
#include "termtrend/model.hpp"
#include "termtrend/pipeline.hpp"
#include "termtrend/query.hpp"
#include "termtrend/train.hpp"
#include "termtrend/trend.hpp"
#include "termtrend/windows.hpp"

namespace fs = std::filesystem;
using namespace termtrend;

namespace {

const std::string kDefaultStopwords = std::string(TERMTREND_DATA_DIR) + "/stopwords_en.txt";

struct TokenizerOptions {
  std::string stopwords = kDefaultStopwords;
  std::size_t min_token_length = 1;

  TokenizerConfig load() const {
    TokenizerConfig config;
    config.stopwords = load_stopwords(stopwords);
    config.min_token_length = min_token_length;
    return config;
  }
};

void add_tokenizer_options(CLI::App* cmd, TokenizerOptions& opts) {
  cmd->add_option("--stopwords", opts.stopwords, "Stopword list, one token per line")
      ->capture_default_str();
  cmd->add_option("--min-token-length", opts.min_token_length, "Drop shorter tokens")
      ->capture_default_str();
}

struct TrainerOptions {
  TrainerConfig config;
  std::string backend = "glove";
};

void add_trainer_options(CLI::App* cmd, TrainerOptions& opts) {
  auto& c = opts.config;
  cmd->add_option("--backend", opts.backend, "glove or sgns")
      ->check(CLI::IsMember({"glove", "sgns"}))
      ->capture_default_str();
  cmd->add_option("--dim", c.dim, "Vector dimension")->capture_default_str();
  cmd->add_option("--context-window", c.context_window, "Tokens on each side")
      ->capture_default_str();
  cmd->add_option("--x-max", c.x_max, "GloVe weighting cutoff")->capture_default_str();
  cmd->add_option("--alpha", c.alpha, "GloVe weighting exponent")->capture_default_str();
  cmd->add_option("--learning-rate", c.learning_rate, "Base step size (AdaGrad for glove, plain SGD for sgns)")->capture_default_str();
  cmd->add_option("--epochs", c.max_epochs, "Epochs; one snapshot each")->capture_default_str();
  cmd->add_option("--negative-samples", c.negative_samples, "SGNS noise words per pair")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
}

TrainerConfig resolve(const TrainerOptions& opts) {
  TrainerConfig c = opts.config;
  c.backend = *parse_backend(opts.backend);
  return c;
}

std::vector<Observation> ingest_inputs(const std::vector<std::string>& corpora,
                                       const std::vector<std::string>& books,
                                       const std::vector<std::string>& excluded,
                                       const TokenizerConfig& tokenizer) {
  std::vector<Observation> out;
  for (const auto& c : corpora) {
    auto obs = ingest_documents(c, tokenizer);
    out.insert(out.end(), obs.begin(), obs.end());
  }
  for (const auto& b : books) {
    auto obs = ingest_book(b, tokenizer, excluded);
    out.insert(out.end(), obs.begin(), obs.end());
  }
  return out;
}

// Config files hold flat "key=value" lines for the run subcommand; CLI11 only
// reads configs at the root, so unqualified keys are scoped to "run" here.
class RunConfigFile : public CLI::ConfigBase {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigBase::from_config(input);
    for (auto& item : items) {
      if (item.parents.empty()) item.parents = {"run"};
    }
    return items;
  }
};

void print_neighbors(const std::vector<RankedNeighbor>& neighbors) {
  for (const auto& n : neighbors) {
    std::printf("%zu\t%s\t%.6f\n", n.rank, n.word.c_str(), n.cosine);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word embeddings, keyword test suites and term trends for timestamped corpora"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Tokenize a corpus into observations (JSON Lines)");
  std::vector<std::string> ingest_corpora, ingest_books, ingest_excluded;
  std::string ingest_out;
  TokenizerOptions ingest_tok;
  ingest->add_option("--corpus", ingest_corpora, "Paper records, JSON Lines");
  ingest->add_option("--book", ingest_books, "Plaintext book file or directory");
  ingest->add_option("--exclude-section", ingest_excluded, "Heading marker of a section to drop");
  ingest->add_option("--out", ingest_out, "Observations output file")->required();
  add_tokenizer_options(ingest, ingest_tok);

  // train
  auto* train_cmd = app.add_subcommand("train", "Train one model, writing a snapshot per epoch");
  std::string train_obs, train_years, train_label = "corpus", train_out;
  std::size_t train_min_df = 3;
  TrainerOptions train_opts;
  train_cmd->add_option("--observations", train_obs, "Output of 'ingest'")->required();
  train_cmd->add_option("--years", train_years, "Restrict to a window, e.g. 2005-2009");
  train_cmd->add_option("--label", train_label, "Snapshot label when --years is not given")
      ->capture_default_str();
  train_cmd->add_option("--min-df", train_min_df, "Minimum observations per token")
      ->capture_default_str();
  train_cmd->add_option("--out-dir", train_out, "Snapshot directory")->required();
  add_trainer_options(train_cmd, train_opts);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Score one model against a keyword suite");
  std::string eval_model, eval_keywords, eval_report, eval_summary;
  std::size_t eval_top = kDefaultTopK;
  eval_cmd->add_option("--model", eval_model, "Embedding file")->required();
  eval_cmd->add_option("--keywords", eval_keywords, "Keyword file")->required();
  eval_cmd->add_option("--top", eval_top, "Neighbours searched per combination")
      ->capture_default_str();
  eval_cmd->add_option("--report", eval_report, "Per-case CSV");
  eval_cmd->add_option("--summary", eval_summary, "Suite summary CSV");

  // select
  auto* select_cmd = app.add_subcommand("select", "Pick the epoch snapshot with the highest D");
  std::vector<std::string> select_snapshots;
  std::string select_dir, select_label, select_keywords, select_table;
  std::size_t select_top = kDefaultTopK;
  select_cmd->add_option("--snapshot", select_snapshots, "Snapshot file");
  select_cmd->add_option("--snapshots-dir", select_dir, "Directory of snapshots");
  select_cmd->add_option("--label", select_label, "Only snapshots with this label");
  select_cmd->add_option("--keywords", select_keywords, "Keyword file")->required();
  select_cmd->add_option("--top", select_top, "Neighbours searched per combination")
      ->capture_default_str();
  select_cmd->add_option("--table", select_table, "Epoch,D CSV output");

  // query
  auto* query_cmd = app.add_subcommand("query", "Nearest neighbours of a word expression");
  std::string query_model, query_expr, query_rank_of, query_prefix;
  std::size_t query_top = kDefaultTopK;
  query_cmd->add_option("--model", query_model, "Embedding file")->required();
  query_cmd->add_option("--expr", query_expr, "e.g. \"+defect +classification\"")->required();
  query_cmd->add_option("--top", query_top, "Neighbours to list")->capture_default_str();
  query_cmd->add_option("--rank-of", query_rank_of, "Print the rank of one word instead");
  query_cmd->add_option("--prefix", query_prefix, "Print the best rank among words with a prefix");

  // trend
  auto* trend_cmd = app.add_subcommand("trend", "Prefix rank series across window models");
  std::string trend_dir, trend_target, trend_out;
  std::vector<std::string> trend_prefixes;
  trend_cmd->add_option("--models-dir", trend_dir, "Selected per-window models")->required();
  trend_cmd->add_option("--target", trend_target, "Target expression")->required();
  trend_cmd->add_option("--prefix", trend_prefixes, "Prefix group (repeatable)")->required();
  trend_cmd->add_option("--out", trend_out, "Trend CSV")->required();

  // run
  auto* run_cmd = app.add_subcommand("run", "Full pipeline: ingest, windows, train, score, select");
  app.set_config("--config", "", "key=value configuration file for 'run'");
  app.config_formatter(std::make_shared<RunConfigFile>());
  RunConfig run;
  std::vector<std::string> run_corpora, run_books;
  std::string run_stopwords = kDefaultStopwords, run_keywords, run_out;
  std::optional<int> run_anchor;
  TrainerOptions run_trainer;
  run_cmd->add_option("--corpus", run_corpora, "Paper records, JSON Lines");
  run_cmd->add_option("--book", run_books, "Plaintext book corpus (trained as one model)");
  run_cmd->add_option("--exclude-section", run.excluded_sections, "Book section heading to drop");
  run_cmd->add_option("--stopwords", run_stopwords, "Stopword list")->capture_default_str();
  run_cmd->add_option("--min-token-length", run.min_token_length, "Drop shorter tokens")
      ->capture_default_str();
  run_cmd->add_option("--window-width", run.window_width, "Years per window")
      ->capture_default_str();
  run_cmd->add_option("--window-step", run.window_step, "Years between window starts")
      ->capture_default_str();
  run_cmd->add_option("--window-anchor", run_anchor, "First window start (default: first year)");
  run_cmd->add_option("--min-df", run.min_df, "Minimum observations per token")
      ->capture_default_str();
  add_trainer_options(run_cmd, run_trainer);
  run_cmd->add_option("--keywords", run_keywords, "Keyword file")->required();
  run_cmd->add_option("--top", run.top_k, "Neighbours searched per combination")
      ->capture_default_str();
  run_cmd->add_option("--out", run_out, "Output directory")->required();
  run_cmd->add_option("--jobs", run.jobs, "Windows trained in parallel")->capture_default_str();
  run_cmd->add_flag("--deterministic,!--no-deterministic", run.deterministic,
                    "Single-threaded epochs with fixed seeds (always on)");

  // "--config" belongs to the root app; accept it after "run" too by moving
  // it in front of the subcommand.
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      std::vector<std::string> moved{args[i], args[i + 1]};
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      args.insert(args.begin(), moved.begin(), moved.end());
    } else if (args[i].starts_with("--config=")) {
      std::string moved = args[i];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      args.insert(args.begin(), moved);
    }
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kUsage);
  }

  try {
    if (*ingest) {
      if (ingest_corpora.empty() && ingest_books.empty()) {
        throw UsageError("ingest needs --corpus or --book");
      }
      const auto obs = ingest_inputs(ingest_corpora, ingest_books, ingest_excluded,
                                     ingest_tok.load());
      write_observations(ingest_out, obs);
      const auto empty = std::count_if(obs.begin(), obs.end(), [](auto& o) { return o.empty(); });
      std::cerr << obs.size() << " observations (" << empty << " empty after cleaning) -> "
                << ingest_out << '\n';
    } else if (*train_cmd) {
      auto obs = read_observations(train_obs);
      std::string label = train_label;
      std::optional<TimeWindow> window;
      if (!train_years.empty()) {
        window = TimeWindow::parse_label(train_years);
        if (!window) throw UsageError("--years must look like 2005-2009");
        std::erase_if(obs, [&](const Observation& o) { return !o.year || !window->contains(*o.year); });
        label = window->label();
      }
      const auto vocab = build_vocabulary(obs, train_min_df);
      const auto config = resolve(train_opts);
      const auto snaps = train({obs, vocab, config, label, window}, directory_sink(train_out));
      std::cerr << "vocabulary " << vocab.size() << ", " << snaps.size() << " snapshots in "
                << train_out << '\n';
      for (const auto& s : snaps) std::printf("%d\t%.9g\t%s\n", s.epoch, s.loss, s.path.c_str());
    } else if (*eval_cmd) {
      const auto model = load_model(eval_model);
      const auto suite = score_suite(read_keywords(eval_keywords), model, eval_top);
      if (!eval_report.empty()) write_suite_report(eval_report, suite);
      if (!eval_summary.empty()) write_suite_summary(eval_summary, suite);
      std::printf("D\t%.6f\nT_effective\t%zu\nT_total\t%zu\n", suite.degree_of_success,
                  suite.t_effective, suite.t_total());
    } else if (*select_cmd) {
      std::vector<fs::path> paths(select_snapshots.begin(), select_snapshots.end());
      if (!select_dir.empty()) {
        for (const auto& entry : fs::directory_iterator(select_dir)) {
          auto name = parse_snapshot_name(entry.path().filename().string());
          if (name && (select_label.empty() || name->label == select_label)) {
            paths.push_back(entry.path());
          }
        }
      }
      if (paths.empty()) throw UsageError("no snapshots given (--snapshot or --snapshots-dir)");
      std::sort(paths.begin(), paths.end());
      const auto selection = select_best_epoch(paths, read_keywords(select_keywords), select_top);
      if (!select_table.empty()) write_epoch_table(select_table, selection.table);
      if (!selection.best) throw DataError("no scorable test cases in any snapshot");
      std::printf("%s\t%d\t%.6f\n", selection.best->path.c_str(), selection.best->epoch,
                  *selection.best->degree_of_success);
    } else if (*query_cmd) {
      const auto model = load_model(query_model);
      const auto expr = QueryExpression::parse(query_expr);
      if (!query_rank_of.empty()) {
        auto rank = rank_of(expr, model, query_rank_of);
        std::printf("%s\t%s\n", query_rank_of.c_str(),
                    rank ? std::to_string(*rank).c_str() : "absent");
      } else if (!query_prefix.empty()) {
        auto hit = prefix_min_rank(expr, model, query_prefix);
        if (hit) {
          std::printf("%s\t%zu\t%s\n", query_prefix.c_str(), hit->rank, hit->word.c_str());
        } else {
          std::printf("%s\tabsent\t\n", query_prefix.c_str());
        }
      } else {
        print_neighbors(top_k(expr, model, query_top));
      }
    } else if (*trend_cmd) {
      const auto models = load_window_models(trend_dir);
      const auto series = trend(models, QueryExpression::parse(trend_target), trend_prefixes);
      export_trend_csv(series, trend_out);
      std::cerr << series.size() << " series x " << models.size() << " windows -> " << trend_out
                << '\n';
    } else if (*run_cmd) {
      run.corpora.assign(run_corpora.begin(), run_corpora.end());
      run.books.assign(run_books.begin(), run_books.end());
      run.stopwords = run_stopwords;
      run.keywords = run_keywords;
      run.output_dir = run_out;
      run.window_anchor = run_anchor;
      run.trainer = resolve(run_trainer);
      const auto manifest = run_pipeline(run);
      for (const auto& w : manifest.windows) {
        std::cerr << w.label << '\t' << w.status;
        if (w.best_epoch) {
          std::cerr << "\tepoch " << *w.best_epoch << "\tD " << *w.best_degree_of_success
                    << "\tT " << w.t_effective << '/' << w.t_total;
        }
        std::cerr << '\n';
      }
      std::printf("%s\n", manifest.path.c_str());
    }
  } catch (const Error& e) {
    std::cerr << "termtrend: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "termtrend: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kData);
  }
  return 0;
}
