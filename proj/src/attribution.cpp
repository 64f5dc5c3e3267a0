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

#include "simplex/attribution.hpp"

#include "simplex/parallel.hpp"

namespace simplex {

std::string to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kZeroInput:
      return "zero_input";
    case BaselineKind::kTrainingMean:
      return "training_mean";
    case BaselineKind::kCustom:
      return "custom";
  }
  return "custom";
}

Baseline Baseline::make(const SplitModel& model, Vector input, BaselineKind kind) {
  require_size(input.size(), model.input_dim(), "baseline input");
  Baseline out;
  out.latent = forward_latent(model, input);
  out.input = std::move(input);
  out.kind = kind;
  return out;
}

Baseline Baseline::zero(const SplitModel& model) {
  return make(model, Vector::Zero(model.input_dim()), BaselineKind::kZeroInput);
}

Baseline Baseline::training_mean(const SplitModel& model, const Matrix& inputs) {
  if (inputs.rows() < 1) throw DataError("training_mean baseline needs data");
  return make(model, inputs.colwise().mean().transpose(), BaselineKind::kTrainingMean);
}

namespace {

void require_bins(int n_bins) {
  if (n_bins < 1) throw UsageError("n_bins must be >= 1");
}

Vector path_point(const Baseline& baseline, const Eigen::Ref<const Vector>& x_c,
                  int n, int n_bins) {
  const double t = static_cast<double>(n) / static_cast<double>(n_bins);
  return baseline.input + t * (x_c - baseline.input);
}

}  // namespace

Matrix integrated_jacobian(const SplitModel& model, const Baseline& baseline,
                           const Eigen::Ref<const Vector>& x_c, int n_bins) {
  require_bins(n_bins);
  require_size(x_c.size(), model.input_dim(), "corpus input");
  Matrix sum = Matrix::Zero(model.latent_dim(), model.input_dim());
  for (int n = 1; n <= n_bins; ++n) {
    sum += latent_jacobian(model, path_point(baseline, x_c, n, n_bins));
  }
  const Vector shift = (x_c - baseline.input) / static_cast<double>(n_bins);
  return sum * shift.asDiagonal();
}

Matrix projected_jacobians(const SplitModel& model,
                           const Eigen::Ref<const Vector>& h,
                           const Baseline& baseline,
                           const Eigen::Ref<const Matrix>& corpus_inputs,
                           int n_bins, int jobs) {
  require_bins(n_bins);
  require_size(h.size(), model.latent_dim(), "test latent");
  require_size(corpus_inputs.cols(), model.input_dim(), "corpus inputs");
  const Vector shift = h - baseline.latent;
  const double shift_sq = shift.squaredNorm();
  if (!(shift_sq > 0.0)) {
    throw NumericalError("degenerate shift: test latent equals baseline latent");
  }
  const Vector covector = shift / shift_sq;

  Matrix projections(corpus_inputs.rows(), corpus_inputs.cols());
  parallel_for(corpus_inputs.rows(), jobs, [&](Index c) {
    const Vector x_c = corpus_inputs.row(c).transpose();
    Vector acc = Vector::Zero(x_c.size());
    for (int n = 1; n <= n_bins; ++n) {
      acc += pullback_gradient(model, path_point(baseline, x_c, n, n_bins), covector);
    }
    projections.row(c) =
        (acc.cwiseProduct(x_c - baseline.input) / static_cast<double>(n_bins))
            .transpose();
  });
  return projections;
}

Vector integrated_gradients(const SplitModel& model, const Baseline& baseline,
                            const Eigen::Ref<const Vector>& x_c, Index output_index,
                            int n_bins) {
  require_bins(n_bins);
  require_size(x_c.size(), model.input_dim(), "corpus input");
  if (output_index < 0 || output_index >= model.output_dim()) {
    throw UsageError("output index " + std::to_string(output_index) +
                     " outside [0, " + std::to_string(model.output_dim()) + ")");
  }
  // The bias is constant, so df_k/dx = A_k^T dg/dx.
  const Vector covector = model.head_weight.row(output_index).transpose();
  Vector acc = Vector::Zero(x_c.size());
  for (int n = 1; n <= n_bins; ++n) {
    acc += pullback_gradient(model, path_point(baseline, x_c, n, n_bins), covector);
  }
  return acc.cwiseProduct(x_c - baseline.input) / static_cast<double>(n_bins);
}

double completeness_check(const std::vector<Matrix>& jacobians,
                          const Eigen::Ref<const Vector>& weights,
                          const Eigen::Ref<const Vector>& h,
                          const Baseline& baseline) {
  require_size(static_cast<Index>(jacobians.size()), weights.size(), "jacobian list");
  require_size(h.size(), baseline.latent.size(), "test latent");
  Vector total = Vector::Zero(h.size());
  for (std::size_t c = 0; c < jacobians.size(); ++c) {
    require_size(jacobians[c].rows(), h.size(), "integrated jacobian");
    total += weights(static_cast<Index>(c)) * jacobians[c].rowwise().sum();
  }
  return l2_norm(total - (h - baseline.latent));
}

AttributionResult attribute(const SplitModel& model,
                            const Eigen::Ref<const Vector>& h,
                            const Baseline& baseline, const Corpus& corpus,
                            const Eigen::Ref<const Vector>& weights, int n_bins,
                            bool keep_jacobians, int jobs) {
  require_size(weights.size(), corpus.size(), "corpus weights");
  AttributionResult out;
  out.n_bins = n_bins;
  out.projections =
      projected_jacobians(model, h, baseline, corpus.inputs, n_bins, jobs);
  out.weighted_projections = weights.asDiagonal() * out.projections;
  if (keep_jacobians) {
    std::vector<Matrix> jacobians(static_cast<std::size_t>(corpus.size()));
    parallel_for(corpus.size(), jobs, [&](Index c) {
      jacobians[static_cast<std::size_t>(c)] =
          integrated_jacobian(model, baseline, corpus.inputs.row(c).transpose(), n_bins);
    });
    out.jacobians = std::move(jacobians);
  }
  return out;
}

}  // namespace simplex
