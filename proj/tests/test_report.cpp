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

#include <gtest/gtest.h>

#include <cstdlib>
#include <string>

#include "simplex/report.hpp"
#include "simplex/rng.hpp"
#include "simplex/svg.hpp"
#include "test_support.hpp"

namespace simplex {
namespace {

using nlohmann::ordered_json;
using testing::random_matrix;

struct Fixture {
  SplitModel model = testing::random_mlp(21, {3, 8, 8}, 2);
  Corpus corpus;
  Baseline baseline;

  Fixture() {
    CounterRng rng(21, 1);
    const Matrix inputs = random_matrix(rng, 5, 3);
    Matrix labels = Matrix::Zero(5, 2);
    for (Index c = 0; c < 5; ++c) labels(c, c % 2) = 1.0;
    corpus = Corpus::build(model, inputs, labels);
    baseline = Baseline::zero(model);
  }
};

ExplainSettings quick_settings() {
  ExplainSettings settings;
  settings.decomposition.steps = 4000;
  settings.decomposition.learning_rate = 1e-2;
  settings.n_bins = 50;
  settings.seed = 7;
  return settings;
}

TEST(Report, CorpusMemberExplainsItself) {
  const Fixture f;
  const Vector x = f.corpus.inputs.row(2).transpose();
  const ordered_json report =
      explanation_report(f.model, f.corpus, x, 0, f.baseline, quick_settings());

  const auto& weights = report.at("decomposition").at("weights");
  ASSERT_EQ(weights.size(), 5u);
  EXPECT_GT(weights[2].get<double>(), 0.95);
  const double scale = forward_latent(f.model, x).norm();
  EXPECT_LT(report.at("decomposition").at("residual").get<double>(), 0.05 * scale);
  EXPECT_EQ(report.at("schema_version"), kReportSchemaVersion);
  EXPECT_EQ(report.at("baseline").at("kind"), "zero_input");
  EXPECT_EQ(report.at("config").at("k_active"), nullptr);
  EXPECT_EQ(report.at("attribution").at("status"), "ok");

  // Active members only, each with one entry per input feature.
  double total = 0.0;
  for (const auto& block : report.at("corpus_examples")) {
    EXPECT_GE(block.at("weight").get<double>(),
              report.at("decomposition").at("activity_threshold").get<double>());
    ASSERT_EQ(block.at("features").size(), 3u);
    for (const auto& feature : block.at("features")) {
      const double value = feature.at("weighted_projection").get<double>();
      EXPECT_EQ(feature.at("tag"), value >= 0 ? "aligned" : "opposed");
      EXPECT_NEAR(value, block.at("weight").get<double>() *
                             feature.at("projection").get<double>(),
                  1e-12);
      total += value;
    }
    EXPECT_TRUE(block.at("label").is_array());
  }
  EXPECT_NEAR(report.at("attribution").at("total_weighted_projection").get<double>(),
              total, 1e-12);
}

TEST(Report, DegenerateShiftIsFlagged) {
  const Fixture f;
  const Vector x = f.baseline.input;
  const ordered_json report =
      explanation_report(f.model, f.corpus, x, 3, f.baseline, quick_settings());
  EXPECT_EQ(report.at("attribution").at("status"), "degenerate_shift");
  EXPECT_FALSE(report.at("attribution").contains("total_weighted_projection"));
  for (const auto& block : report.at("corpus_examples")) {
    EXPECT_FALSE(block.contains("features"));
  }
  EXPECT_NE(explanation_svg(report).find("degenerate shift"), std::string::npos);
}

TEST(Report, KActiveIsRecorded) {
  const Fixture f;
  ExplainSettings settings = quick_settings();
  settings.decomposition.k_active = 2;
  const Vector x = f.corpus.inputs.colwise().mean().transpose();
  const ordered_json report =
      explanation_report(f.model, f.corpus, x, 0, f.baseline, settings);
  EXPECT_EQ(report.at("config").at("k_active"), 2);
  EXPECT_LE(report.at("corpus_examples").size(), 2u);
}

TEST(Report, RepeatedRunsAreIdentical) {
  const Fixture f;
  const Vector x = f.corpus.inputs.colwise().mean().transpose();
  ExplainSettings serial = quick_settings();
  ExplainSettings threaded = serial;
  threaded.jobs = 3;
  const std::string a =
      explanation_report(f.model, f.corpus, x, 1, f.baseline, serial).dump(1);
  const std::string b =
      explanation_report(f.model, f.corpus, x, 1, f.baseline, serial).dump(1);
  const std::string c =
      explanation_report(f.model, f.corpus, x, 1, f.baseline, threaded).dump(1);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(Report, SvgColoursFollowSign) {
  const std::string chart =
      svg::bar_chart("t", {{"up", 1.0}, {"down", -0.5}}, 0, 0, 400);
  EXPECT_NE(chart.find(svg::kPositive), std::string::npos);
  EXPECT_NE(chart.find(svg::kNegative), std::string::npos);
  const std::string only_up = svg::bar_chart("t", {{"up", 1.0}}, 0, 0, 400);
  EXPECT_EQ(only_up.find(svg::kNegative), std::string::npos);

  const Fixture f;
  const Vector x = f.corpus.inputs.row(0).transpose() * 0.5;
  const std::string doc = explanation_svg(
      explanation_report(f.model, f.corpus, x, 0, f.baseline, quick_settings()));
  EXPECT_EQ(doc.rfind("<svg", 0), 0u);
  EXPECT_NE(doc.find("</svg>"), std::string::npos);
}

TEST(Report, SvgEscapesMarkup) {
  EXPECT_EQ(svg::escape("a<b & \"c\">"), "a&lt;b &amp; &quot;c&quot;&gt;");
}

// Validates against docs/report_schema.json with the Python jsonschema package.
TEST(Report, MatchesPublishedSchema) {
  const std::string source = SIMPLEX_SOURCE_DIR;
  if (std::system("python3 -c 'import jsonschema' > /dev/null 2>&1") != 0) {
    GTEST_SKIP() << "python3 with jsonschema not available";
  }
  const std::string schema = source + "/docs/report_schema.json";

  const Fixture f;
  testing::TempDir dir("report_schema");
  const Vector inside = f.corpus.inputs.row(1).transpose() * 0.7;
  const Vector degenerate = f.baseline.input;
  ExplainSettings with_k = quick_settings();
  with_k.decomposition.k_active = 3;
  const auto ok = explanation_report(f.model, f.corpus, inside, 0, f.baseline, with_k);
  const auto flat =
      explanation_report(f.model, f.corpus, degenerate, 1, f.baseline, quick_settings());
  Corpus unlabeled = Corpus::build(f.model, f.corpus.inputs);
  const auto bare = explanation_report(f.model, unlabeled, inside, 2,
                                       Baseline::training_mean(f.model, f.corpus.inputs),
                                       quick_settings());

  int index = 0;
  for (const ordered_json* report : {&ok, &flat, &bare}) {
    const auto path = dir.path() / ("report_" + std::to_string(index++) + ".json");
    testing::write_file(path, report->dump(1));
    const std::string command =
        "python3 -c 'import json,sys,jsonschema; "
        "jsonschema.validate(json.load(open(sys.argv[1])), json.load(open(sys.argv[2])))' '" +
        path.string() + "' '" + schema + "'";
    EXPECT_EQ(std::system(command.c_str()), 0) << path;
  }
}

}  // namespace
}  // namespace simplex
