/*
 * Copyright 2026 The simplex-explain Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "simplex/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>

#include "simplex/attribution.hpp"
#include "simplex/datasets.hpp"
#include "simplex/decomposition.hpp"
#include "simplex/experiments.hpp"
#include "simplex/model.hpp"
#include "simplex/report.hpp"
#include "simplex/rng.hpp"
#include "simplex/svg.hpp"

namespace simplex {

namespace fs = std::filesystem;

namespace {

RunConfig load_config(const GlobalOptions& options, std::set<std::string> allowed) {
  if (options.config.empty()) throw UsageError("--config is required");
  return RunConfig::load(options.config, allowed);
}

void prepare_out(const GlobalOptions& options) {
  std::error_code ec;
  fs::create_directories(options.out, ec);
  if (ec) throw DataError("cannot create output directory '" + options.out.string() + "'");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << text;
}

std::string cell(double value) { return format_double(value); }

std::string cell(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

DecompositionConfig decomposition_from(const RunConfig& config) {
  DecompositionConfig cfg;
  cfg.steps = static_cast<int>(config.get_int("steps", cfg.steps));
  cfg.learning_rate = config.get_double("learning_rate", cfg.learning_rate);
  cfg.activity_threshold = config.get_double("activity_threshold", cfg.activity_threshold);
  if (config.has("k_active")) cfg.k_active = config.get_int("k_active");
  return cfg;
}

// CSV for tabular data; anything else is read as IDX images, with labels
// from an optional IDX file named by `<key>_labels`.
Table read_table(const RunConfig& config, const std::string& key) {
  const fs::path path = config.get_existing_path(key);
  if (path.extension() == ".csv") return read_csv(path.string());
  Table table;
  table.features = load_idx_images(path.string());
  if (config.has(key + "_labels")) {
    const std::vector<int> labels =
        load_idx_labels(config.get_existing_path(key + "_labels").string());
    require_size(static_cast<Index>(labels.size()), table.features.rows(), "IDX label count");
    Vector target(table.features.rows());
    for (Index r = 0; r < target.size(); ++r) target(r) = labels[static_cast<std::size_t>(r)];
    table.target = std::move(target);
  }
  return table;
}

// Labels become one-hot for classifiers and a single column otherwise.
Corpus corpus_from(const SplitModel& model, const RunConfig& config, const std::string& key) {
  const Table table = read_table(config, key);
  require_size(table.features.cols(), model.input_dim(), "corpus feature count");
  std::optional<Matrix> labels;
  if (table.target) {
    const LossKind loss = model.output_dim() > 1 ? LossKind::kCrossEntropy : LossKind::kMse;
    labels = to_dataset(table, loss, model.output_dim()).targets;
  }
  return Corpus::build(model, table.features, labels);
}

Matrix inputs_from(const SplitModel& model, const RunConfig& config, const std::string& key) {
  Table table = read_table(config, key);
  require_size(table.features.cols(), model.input_dim(), "test feature count");
  return std::move(table.features);
}

Baseline baseline_from(const RunConfig& config, const SplitModel& model,
                       const Corpus& corpus) {
  const std::string kind = config.get_string("baseline", "zero");
  if (kind == "zero") return Baseline::zero(model);
  if (kind == "mean") {
    const Matrix data = config.has("baseline_data")
                            ? inputs_from(model, config, "baseline_data")
                            : corpus.inputs;
    return Baseline::training_mean(model, data);
  }
  if (kind == "custom") {
    const Matrix row = inputs_from(model, config, "baseline_data");
    if (row.rows() != 1) throw DataError("custom baseline file must hold exactly one row");
    return Baseline::make(model, row.row(0).transpose(), BaselineKind::kCustom);
  }
  throw UsageError("baseline must be zero, mean or custom");
}

Matrix take_rows(const Matrix& m, const std::vector<Index>& rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Index>(r)) = m.row(rows[r]);
  return out;
}

std::vector<Index> sample_rows(CounterRng& rng, Index available, Index wanted,
                               const char* what) {
  if (wanted < 1 || wanted > available) {
    throw UsageError(std::string(what) + " size " + std::to_string(wanted) +
                     " outside [1, " + std::to_string(available) + "]");
  }
  std::vector<Index> rows(static_cast<std::size_t>(available));
  std::iota(rows.begin(), rows.end(), Index{0});
  rng.shuffle(rows);
  rows.resize(static_cast<std::size_t>(wanted));
  return rows;
}

}  // namespace

void cmd_train(const GlobalOptions& options, std::ostream& log) {
  const RunConfig config = load_config(
      options, {"data", "data_labels", "loss", "classes", "hidden", "activation", "epochs", "batch_size",
                "learning_rate", "weight_decay", "dropout", "checkpoint"});
  TrainConfig train_cfg;
  train_cfg.loss = loss_from_string(config.get_string("loss", "cross_entropy"));
  train_cfg.epochs = static_cast<int>(config.get_int("epochs", train_cfg.epochs));
  train_cfg.batch_size = static_cast<int>(config.get_int("batch_size", train_cfg.batch_size));
  train_cfg.learning_rate = config.get_double("learning_rate", train_cfg.learning_rate);
  train_cfg.weight_decay = config.get_double("weight_decay", 1e-5);
  train_cfg.dropout = config.get_double("dropout", 0.0);
  train_cfg.seed = options.seed;
  train_cfg.validate();
  const Index classes = train_cfg.loss == LossKind::kCrossEntropy
                            ? static_cast<Index>(config.get_int("classes", 2))
                            : 1;
  const Activation activation = activation_from_string(config.get_string("activation", "relu"));
  config.get_existing_path("data");  // fail before creating the output dir
  const std::vector<long long> hidden = config.get_int_list("hidden");
  prepare_out(options);

  const Dataset data = to_dataset(read_table(config, "data"), train_cfg.loss, classes);
  std::vector<Index> widths{data.inputs.cols()};
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  const SplitModel initial = initialize_model(widths, classes, activation, options.seed);
  log << "training on " << data.size() << " examples for " << train_cfg.epochs
      << " epochs\n";

  std::vector<EpochStats> history;
  const SplitModel model = train(initial, data, train_cfg, &history);

  std::string csv = std::string("epoch,loss,") +
                    (train_cfg.loss == LossKind::kCrossEntropy ? "accuracy" : "rmse") + "\n";
  for (const EpochStats& stats : history) {
    csv += std::to_string(stats.epoch) + "," + cell(stats.loss) + "," + cell(stats.metric) + "\n";
  }
  write_text(options.out / "train_log.csv", csv);
  const fs::path checkpoint = options.out / config.get_string("checkpoint", "model.json");
  save_checkpoint(model, checkpoint.string());
  log << "wrote " << checkpoint.string() << "\n";
}

void cmd_explain(const GlobalOptions& options, std::ostream& log) {
  const RunConfig config = load_config(
      options, {"checkpoint", "corpus", "corpus_labels", "test", "baseline", "baseline_data", "n_bins", "steps",
                "learning_rate", "k_active", "activity_threshold", "max_tests"});
  const SplitModel model = load_checkpoint(config.get_existing_path("checkpoint").string());
  const Corpus corpus = corpus_from(model, config, "corpus");
  Matrix tests = inputs_from(model, config, "test");
  if (config.has("max_tests")) {
    tests.conservativeResize(std::min<Index>(tests.rows(), config.get_int("max_tests")),
                             Eigen::NoChange);
  }
  const Baseline baseline = baseline_from(config, model, corpus);
  ExplainSettings settings;
  settings.decomposition = decomposition_from(config);
  settings.decomposition.validate(corpus.size());
  settings.n_bins = static_cast<int>(config.get_int("n_bins", kDefaultBins));
  if (settings.n_bins < 1) throw UsageError("n_bins must be >= 1");
  settings.seed = options.seed;
  settings.jobs = options.jobs;
  prepare_out(options);

  for (Index t = 0; t < tests.rows(); ++t) {
    const auto report = explanation_report(model, corpus, tests.row(t).transpose(), t,
                                           baseline, settings);
    char stem[32];
    std::snprintf(stem, sizeof stem, "report_%04lld", static_cast<long long>(t));
    write_text(options.out / (std::string(stem) + ".json"), report.dump(1) + "\n");
    write_text(options.out / (std::string(stem) + ".svg"), explanation_svg(report));
    log << "explained test " << t << " residual "
        << report["decomposition"]["residual"].get<double>() << "\n";
  }
}

void cmd_benchmark(const GlobalOptions& options, std::ostream& log) {
  const RunConfig config = load_config(
      options, {"checkpoint", "corpus_pool", "corpus_pool_labels", "test_pool", "corpus_size", "test_size",
                "k_values", "seeds", "steps", "learning_rate", "lambda"});
  const SplitModel model = load_checkpoint(config.get_existing_path("checkpoint").string());
  const Corpus pool = corpus_from(model, config, "corpus_pool");
  if (!pool.labels) throw DataError("corpus_pool needs a target column for the representer");
  const Matrix test_pool = inputs_from(model, config, "test_pool");
  const Index corpus_size = config.get_int("corpus_size", std::min<Index>(100, pool.size()));
  const Index test_size = config.get_int("test_size", std::min<Index>(100, test_pool.rows()));
  const std::vector<long long> k_list = config.get_int_list("k_values", {1, 2, 3, 5, 10});
  const long long seeds = config.get_int("seeds", 1);
  const double lambda = config.get_double("lambda", 1e-5);
  if (seeds < 1) throw UsageError("seeds must be >= 1");
  const std::vector<Index> ks(k_list.begin(), k_list.end());
  for (Index k : ks) {
    if (k < 1 || k > corpus_size) throw UsageError("k_values must lie in [1, corpus_size]");
  }
  const DecompositionConfig decomposition = decomposition_from(config);
  prepare_out(options);

  std::vector<PrecisionRow> rows;
  for (long long s = 0; s < seeds; ++s) {
    const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(s);
    CounterRng rng(seed, 0xBE0C);
    const std::vector<Index> corpus_rows = sample_rows(rng, pool.size(), corpus_size, "corpus");
    const std::vector<Index> test_rows = sample_rows(rng, test_pool.rows(), test_size, "test");
    const Corpus corpus = Corpus::build(model, take_rows(pool.inputs, corpus_rows),
                                        take_rows(*pool.labels, corpus_rows));
    const auto seed_rows = precision_benchmark(model, corpus, take_rows(test_pool, test_rows),
                                               ks, decomposition, lambda, seed, options.jobs);
    rows.insert(rows.end(), seed_rows.begin(), seed_rows.end());
    log << "benchmark seed " << seed << " done\n";
  }

  std::string csv = "method,K,seed,r2_latent,r2_output,residual_mean\n";
  for (const PrecisionRow& row : rows) {
    csv += row.method + "," + std::to_string(row.k) + "," + std::to_string(row.seed) + "," +
           cell(row.r2_latent) + "," + cell(row.r2_output) + "," + cell(row.residual_mean) +
           "\n";
  }
  write_text(options.out / "benchmark.csv", csv);

  // Mean and population std over seeds per (method, K).
  struct Acc {
    std::vector<double> latent, output;
  };
  std::map<std::pair<std::string, Index>, Acc> groups;
  for (const PrecisionRow& row : rows) {
    Acc& acc = groups[{row.method, row.k}];
    if (row.r2_latent) acc.latent.push_back(*row.r2_latent);
    acc.output.push_back(row.r2_output);
  }
  auto mean_std = [](const std::vector<double>& v) -> std::pair<double, double> {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double sq = 0.0;
    for (double x : v) sq += (x - mean) * (x - mean);
    return {mean, std::sqrt(sq / static_cast<double>(v.size()))};
  };
  std::string summary =
      "method,K,seeds,r2_latent_mean,r2_latent_std,r2_output_mean,r2_output_std\n";
  std::map<std::string, svg::Series> latent_series, output_series;
  for (const char* method : kPrecisionMethods) {
    for (Index k : ks) {
      const Acc& acc = groups.at({method, k});
      const auto [out_mean, out_std] = mean_std(acc.output);
      std::string latent_cells = ",";
      if (!acc.latent.empty()) {
        const auto [lat_mean, lat_std] = mean_std(acc.latent);
        latent_cells = cell(lat_mean) + "," + cell(lat_std);
        auto& series = latent_series[method];
        series.name = method;
        series.x.push_back(static_cast<double>(k));
        series.y.push_back(lat_mean);
        series.spread.push_back(lat_std);
      }
      auto& series = output_series[method];
      series.name = method;
      series.x.push_back(static_cast<double>(k));
      series.y.push_back(out_mean);
      series.spread.push_back(out_std);
      summary += std::string(method) + "," + std::to_string(k) + "," +
                 std::to_string(acc.output.size()) + "," + latent_cells + "," +
                 cell(out_mean) + "," + cell(out_std) + "\n";
    }
  }
  write_text(options.out / "benchmark_summary.csv", summary);
  auto values = [](const std::map<std::string, svg::Series>& m) {
    std::vector<svg::Series> out;
    for (const char* method : kPrecisionMethods) {
      if (m.count(method)) out.push_back(m.at(method));
    }
    return out;
  };
  write_text(options.out / "benchmark_r2_latent.svg",
             svg::line_chart("Latent R2", "K", "R2", values(latent_series)));
  write_text(options.out / "benchmark_r2_output.svg",
             svg::line_chart("Output R2", "K", "R2", values(output_series)));
  log << "wrote " << rows.size() << " benchmark rows\n";
}

void cmd_detect(const GlobalOptions& options, std::ostream& log) {
  const RunConfig config = load_config(
      options, {"checkpoint", "corpus", "corpus_labels", "inliers", "outliers", "knn_k", "steps",
                "learning_rate", "random_trials"});
  const SplitModel model = load_checkpoint(config.get_existing_path("checkpoint").string());
  const Corpus corpus = corpus_from(model, config, "corpus");
  const Matrix inliers = inputs_from(model, config, "inliers");
  const Matrix outliers = inputs_from(model, config, "outliers");
  if (outliers.rows() == 0) throw DataError("the shifted (outlier) set is empty");
  const Index knn_k = config.get_int("knn_k", std::min<Index>(7, corpus.size()));
  const int trials = static_cast<int>(config.get_int("random_trials", 100));
  const DecompositionConfig decomposition = decomposition_from(config);
  prepare_out(options);

  Matrix tests(inliers.rows() + outliers.rows(), model.input_dim());
  tests << inliers, outliers;
  std::vector<bool> flags(static_cast<std::size_t>(tests.rows()), false);
  std::fill(flags.begin() + inliers.rows(), flags.end(), true);
  const DetectionResult result = detection_benchmark(
      model, corpus, tests, flags, decomposition, knn_k, trials, options.seed, options.jobs);

  std::string csv = "n,simplex,knn_uniform,knn_distance,random_mean,random_std,ideal\n";
  svg::Series simplex_s{"simplex", {}, {}, {}}, uniform_s{"knn_uniform", {}, {}, {}},
      distance_s{"knn_distance", {}, {}, {}}, random_s{"random", {}, {}, {}},
      ideal_s{"ideal", {}, {}, {}};
  for (std::size_t n = 0; n < result.simplex.counts.size(); ++n) {
    const auto i = static_cast<Index>(n);
    csv += std::to_string(n + 1) + "," + std::to_string(result.simplex.counts[n]) + "," +
           std::to_string(result.knn_uniform.counts[n]) + "," +
           std::to_string(result.knn_distance.counts[n]) + "," +
           cell(result.random.mean(i)) + "," + cell(result.random.stddev(i)) + "," +
           std::to_string(result.ideal.counts[n]) + "\n";
    const double x = static_cast<double>(n + 1);
    for (auto* s : {&simplex_s, &uniform_s, &distance_s, &random_s, &ideal_s}) s->x.push_back(x);
    simplex_s.y.push_back(static_cast<double>(result.simplex.counts[n]));
    uniform_s.y.push_back(static_cast<double>(result.knn_uniform.counts[n]));
    distance_s.y.push_back(static_cast<double>(result.knn_distance.counts[n]));
    random_s.y.push_back(result.random.mean(i));
    random_s.spread.push_back(result.random.stddev(i));
    ideal_s.y.push_back(static_cast<double>(result.ideal.counts[n]));
  }
  write_text(options.out / "detection.csv", csv);
  write_text(options.out / "detection.svg",
             svg::line_chart("Outliers found by inspection order", "examples inspected",
                             "outliers found",
                             {simplex_s, uniform_s, distance_s, random_s, ideal_s}));
  log << "detection over " << tests.rows() << " test examples written\n";
}

void cmd_corrupt(const GlobalOptions& options, std::ostream& log) {
  const RunConfig config = load_config(
      options, {"checkpoint", "corpus", "corpus_labels", "test", "baseline", "baseline_data", "n_values",
                "n_bins", "steps", "learning_rate", "max_tests"});
  const SplitModel model = load_checkpoint(config.get_existing_path("checkpoint").string());
  const std::vector<long long> n_list = config.get_int_list("n_values", {0, 2, 5});
  for (long long n : n_list) {
    if (n < 0 || n > model.input_dim()) {
      throw UsageError("n_values entry " + std::to_string(n) + " outside [0, " +
                       std::to_string(model.input_dim()) + "]");
    }
  }
  const Corpus corpus = corpus_from(model, config, "corpus");
  Matrix tests = inputs_from(model, config, "test");
  if (config.has("max_tests")) {
    tests.conservativeResize(std::min<Index>(tests.rows(), config.get_int("max_tests")),
                             Eigen::NoChange);
  }
  const Baseline baseline = baseline_from(config, model, corpus);
  const int n_bins = static_cast<int>(config.get_int("n_bins", kDefaultBins));
  const DecompositionConfig decomposition = decomposition_from(config);
  prepare_out(options);

  const std::vector<Index> ns(n_list.begin(), n_list.end());
  const std::vector<CorruptionRow> rows = corruption_benchmark(
      model, corpus, tests, baseline, ns, decomposition, n_bins, options.jobs);

  std::string csv = "test_index,n,delta_projection,delta_integrated_gradients\n";
  std::vector<svg::BoxGroup> boxes;
  for (Index n : ns) {
    svg::BoxGroup projection{"proj n=" + std::to_string(n), {}};
    svg::BoxGroup gradients{"IG n=" + std::to_string(n), {}};
    for (const CorruptionRow& row : rows) {
      if (row.n != n) continue;
      projection.values.push_back(row.delta_projection);
      gradients.values.push_back(row.delta_integrated_gradients);
    }
    boxes.push_back(std::move(projection));
    boxes.push_back(std::move(gradients));
  }
  for (const CorruptionRow& row : rows) {
    csv += std::to_string(row.test_index) + "," + std::to_string(row.n) + "," +
           cell(row.delta_projection) + "," + cell(row.delta_integrated_gradients) + "\n";
  }
  write_text(options.out / "corruption.csv", csv);
  write_text(options.out / "corruption.svg",
             svg::box_plot("Residual increase after corpus corruption", boxes));
  log << "corruption rows written: " << rows.size() << "\n";
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"train", "explain", "benchmark", "detect",
                                              "corrupt"};
  return names;
}

int run_command(const std::string& name, const GlobalOptions& options, std::ostream& log,
                std::ostream& err) {
  try {
    if (options.jobs < 1) throw UsageError("--jobs must be >= 1");
    if (name == "train") {
      cmd_train(options, log);
    } else if (name == "explain") {
      cmd_explain(options, log);
    } else if (name == "benchmark") {
      cmd_benchmark(options, log);
    } else if (name == "detect") {
      cmd_detect(options, log);
    } else if (name == "corrupt") {
      cmd_corrupt(options, log);
    } else {
      throw UsageError("unknown command '" + name + "'");
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::kData);
  }
  return 0;
}

int cli_main(int argc, char** argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"Corpus-based explanations for split black-box models"};
  app.require_subcommand(1);
  GlobalOptions options;
  std::string config, out = ".";
  app.add_option("--config", config, "key = value settings file");
  app.add_option("--seed", options.seed, "global seed");
  app.add_option("--out", out, "output directory");
  app.add_option("--jobs", options.jobs, "worker threads");
  for (const std::string& name : command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, log, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, log, err);
    return static_cast<int>(ErrorKind::kUsage);
  }
  options.config = config;
  options.out = out;
  return run_command(app.get_subcommands().front()->get_name(), options, log, err);
}

}  // namespace simplex
