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

#include "simplex/experiments.hpp"

#include "simplex/baselines.hpp"
#include "simplex/parallel.hpp"

namespace simplex {

std::vector<PrecisionRow> precision_benchmark(const SplitModel& model,
                                              const Corpus& corpus,
                                              const Matrix& test_inputs,
                                              std::span<const Index> ks,
                                              const DecompositionConfig& config,
                                              double lambda, std::uint64_t seed,
                                              int jobs) {
  const Matrix test_latents = forward_latent_batch(model, test_inputs);
  const Matrix test_outputs = forward_head_batch(model, test_latents);
  const Index tests = test_inputs.rows();

  Matrix representer(tests, model.output_dim());
  parallel_for(tests, jobs, [&](Index t) {
    representer.row(t) =
        representer_output(model, corpus, test_inputs.row(t).transpose(), lambda)
            .transpose();
  });
  const double representer_r2 = r2_score(test_outputs, representer);

  std::vector<PrecisionRow> rows;
  for (Index k : ks) {
    DecompositionConfig cfg = config;
    cfg.k_active = k;
    const std::vector<Decomposition> fits =
        fit_decompositions(test_latents, corpus.latents, cfg, jobs);

    Matrix simplex_latents(tests, model.latent_dim());
    Matrix uniform_latents(tests, model.latent_dim());
    Matrix distance_latents(tests, model.latent_dim());
    for (Index t = 0; t < tests; ++t) {
      const Vector h = test_latents.row(t).transpose();
      simplex_latents.row(t) = fits[static_cast<std::size_t>(t)].reconstruction.transpose();
      uniform_latents.row(t) =
          reconstruct_latent(corpus.latents, knn_uniform(h, corpus.latents, k).weights)
              .transpose();
      distance_latents.row(t) =
          reconstruct_latent(corpus.latents, knn_distance(h, corpus.latents, k).weights)
              .transpose();
    }
    auto row_for = [&](const char* method, const Matrix& approx) {
      PrecisionRow row;
      row.method = method;
      row.k = k;
      row.seed = seed;
      row.r2_latent = r2_score(test_latents, approx);
      row.r2_output = r2_score(test_outputs, forward_head_batch(model, approx));
      row.residual_mean = (test_latents - approx).rowwise().norm().mean();
      return row;
    };
    rows.push_back(row_for("simplex", simplex_latents));
    rows.push_back(row_for("knn_uniform", uniform_latents));
    rows.push_back(row_for("knn_distance", distance_latents));
    PrecisionRow rep;
    rep.method = "representer";
    rep.k = k;
    rep.seed = seed;
    rep.r2_output = representer_r2;
    rows.push_back(rep);
  }
  return rows;
}

DetectionResult detection_benchmark(const SplitModel& model, const Corpus& corpus,
                                    const Matrix& test_inputs,
                                    const std::vector<bool>& outlier_flags,
                                    const DecompositionConfig& config, Index knn_k,
                                    int random_trials, std::uint64_t seed,
                                    int jobs) {
  const Matrix test_latents = forward_latent_batch(model, test_inputs);
  const Index tests = test_latents.rows();
  const std::vector<Decomposition> fits =
      fit_decompositions(test_latents, corpus.latents, config, jobs);

  DetectionResult result;
  result.simplex_residuals = Vector(tests);
  Vector uniform_residuals(tests);
  Vector distance_residuals(tests);
  for (Index t = 0; t < tests; ++t) {
    const Vector h = test_latents.row(t).transpose();
    result.simplex_residuals(t) = fits[static_cast<std::size_t>(t)].residual;
    uniform_residuals(t) = corpus_residual(
        h, corpus.latents, knn_uniform(h, corpus.latents, knn_k).weights);
    distance_residuals(t) = corpus_residual(
        h, corpus.latents, knn_distance(h, corpus.latents, knn_k).weights);
  }
  result.simplex = detection_curve(result.simplex_residuals, outlier_flags);
  result.knn_uniform = detection_curve(uniform_residuals, outlier_flags);
  result.knn_distance = detection_curve(distance_residuals, outlier_flags);
  result.ideal = ideal_curve(outlier_flags);
  result.random = random_curves(outlier_flags, random_trials, seed);
  return result;
}

std::vector<CorruptionRow> corruption_benchmark(const SplitModel& model,
                                                const Corpus& corpus,
                                                const Matrix& test_inputs,
                                                const Baseline& baseline,
                                                std::span<const Index> ns,
                                                const DecompositionConfig& config,
                                                int n_bins, int jobs) {
  for (Index n : ns) {
    if (n < 0 || n > model.input_dim()) {
      throw UsageError("corruption size " + std::to_string(n) + " outside [0, " +
                       std::to_string(model.input_dim()) + "]");
    }
  }
  const Index tests = test_inputs.rows();
  std::vector<std::vector<CorruptionRow>> per_test(static_cast<std::size_t>(tests));
  parallel_for(tests, jobs, [&](Index t) {
    const Vector x = test_inputs.row(t).transpose();
    const Vector h = forward_latent(model, x);
    if ((h - baseline.latent).squaredNorm() == 0.0) return;
    Index predicted = 0;
    forward_head(model, h).maxCoeff(&predicted);

    const Matrix projections =
        projected_jacobians(model, h, baseline, corpus.inputs, n_bins);
    Matrix gradients(corpus.size(), model.input_dim());
    for (Index c = 0; c < corpus.size(); ++c) {
      gradients.row(c) = integrated_gradients(model, baseline,
                                              corpus.inputs.row(c).transpose(),
                                              predicted, n_bins)
                             .transpose();
    }
    auto& rows = per_test[static_cast<std::size_t>(t)];
    for (Index n : ns) {
      CorruptionRow row;
      row.test_index = t;
      row.n = n;
      row.delta_projection = corruption_delta(model, corpus, h, projections.cwiseAbs(), n,
                                              baseline.input, config);
      row.delta_integrated_gradients = corruption_delta(
          model, corpus, h, gradients.cwiseAbs(), n, baseline.input, config);
      rows.push_back(row);
    }
  });
  std::vector<CorruptionRow> out;
  for (auto& rows : per_test) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

}  // namespace simplex
