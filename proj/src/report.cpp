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

#include "simplex/report.hpp"

#include "simplex/svg.hpp"

namespace simplex {

namespace {

using nlohmann::ordered_json;

ordered_json to_json(const Eigen::Ref<const Vector>& v) {
  ordered_json out = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

ordered_json explanation_report(const SplitModel& model, const Corpus& corpus,
                                const Eigen::Ref<const Vector>& x, Index test_index,
                                const Baseline& baseline,
                                const ExplainSettings& settings) {
  const Prediction prediction = predict(model, x);
  const Vector h = forward_latent(model, x);
  const Decomposition decomposition =
      fit_decomposition(h, corpus.latents, settings.decomposition);
  const double threshold = settings.decomposition.activity_threshold;
  const std::vector<Index> active = decomposition.active_indices(threshold);

  ordered_json report;
  report["schema_version"] = kReportSchemaVersion;
  report["test_index"] = test_index;
  report["test_input"] = to_json(x);
  report["test_logits"] = to_json(prediction.logits);
  report["test_probs"] = to_json(prediction.probs);

  ordered_json active_json = ordered_json::array();
  for (Index c : active) active_json.push_back(c);
  report["decomposition"] = {
      {"weights", to_json(decomposition.weights)},
      {"residual", decomposition.residual},
      {"activity_threshold", threshold},
      {"active_indices", active_json},
  };
  report["baseline"] = {{"kind", to_string(baseline.kind)},
                        {"input", to_json(baseline.input)}};
  ordered_json k_active = nullptr;
  if (settings.decomposition.k_active) k_active = *settings.decomposition.k_active;
  report["config"] = {{"n_bins", settings.n_bins},
                      {"steps", settings.decomposition.steps},
                      {"k_active", k_active},
                      {"seed", settings.seed}};

  const bool degenerate = (h - baseline.latent).squaredNorm() == 0.0;
  Matrix weighted;
  Matrix projections;
  if (!degenerate) {
    // Only active members are shown, so only their rows are computed.
    Matrix active_inputs(static_cast<Index>(active.size()), model.input_dim());
    for (std::size_t a = 0; a < active.size(); ++a) {
      active_inputs.row(static_cast<Index>(a)) = corpus.inputs.row(active[a]);
    }
    projections = projected_jacobians(model, h, baseline, active_inputs,
                                      settings.n_bins, settings.jobs);
    weighted = projections;
    for (std::size_t a = 0; a < active.size(); ++a) {
      weighted.row(static_cast<Index>(a)) *= decomposition.weights(active[a]);
    }
  }

  ordered_json blocks = ordered_json::array();
  for (std::size_t a = 0; a < active.size(); ++a) {
    const Index c = active[a];
    ordered_json block;
    block["corpus_index"] = c;
    block["weight"] = decomposition.weights(c);
    block["input"] = to_json(corpus.inputs.row(c).transpose());
    block["prediction"] = to_json(corpus.predictions.row(c).transpose());
    block["label"] = corpus.labels ? to_json(corpus.labels->row(c).transpose())
                                   : ordered_json(nullptr);
    if (!degenerate) {
      ordered_json features = ordered_json::array();
      for (Index i = 0; i < model.input_dim(); ++i) {
        const double value = weighted(static_cast<Index>(a), i);
        features.push_back({{"feature", i},
                            {"projection", projections(static_cast<Index>(a), i)},
                            {"weighted_projection", value},
                            {"tag", projection_tag(value)}});
      }
      block["features"] = std::move(features);
    }
    blocks.push_back(std::move(block));
  }
  report["corpus_examples"] = std::move(blocks);

  if (degenerate) {
    report["attribution"] = {{"status", "degenerate_shift"}};
  } else {
    report["attribution"] = {{"status", "ok"},
                             {"total_weighted_projection", weighted.sum()}};
  }
  return report;
}

std::string explanation_svg(const ordered_json& report) {
  std::vector<svg::Bar> weights;
  for (const auto& block : report.at("corpus_examples")) {
    weights.push_back({"corpus #" + std::to_string(block.at("corpus_index").get<Index>()),
                       block.at("weight").get<double>()});
  }
  const double width = 520;
  std::string body = svg::bar_chart(
      "Corpus weights (residual " +
          std::to_string(report.at("decomposition").at("residual").get<double>()) + ")",
      weights, 10, 0, width - 20);
  double y = svg::bar_chart_height(weights.size());
  if (report.at("attribution").at("status") == "ok") {
    for (const auto& block : report.at("corpus_examples")) {
      std::vector<svg::Bar> bars;
      for (const auto& feature : block.at("features")) {
        bars.push_back({"feature " + std::to_string(feature.at("feature").get<Index>()),
                        feature.at("weighted_projection").get<double>()});
      }
      body += svg::bar_chart(
          "Weighted projections, corpus #" +
              std::to_string(block.at("corpus_index").get<Index>()),
          bars, 10, y, width - 20);
      y += svg::bar_chart_height(bars.size());
    }
  } else {
    body += "<text x=\"10\" y=\"" + std::to_string(y + 16) +
            "\">degenerate shift: test latent equals baseline latent</text>\n";
    y += 30;
  }
  return svg::document(width, y + 10, body);
}

}  // namespace simplex
