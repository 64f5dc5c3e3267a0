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

#ifndef SIMPLEX_REPORT_HPP_
#define SIMPLEX_REPORT_HPP_

#include <cstdint>
#include <string>

#include <json.hpp>

#include "simplex/attribution.hpp"
#include "simplex/decomposition.hpp"
#include "simplex/model.hpp"

namespace simplex {

// Bumped on any breaking change to the explanation report layout
// (docs/report_schema.json).
inline constexpr int kReportSchemaVersion = 1;

struct ExplainSettings {
  DecompositionConfig decomposition;
  int n_bins = kDefaultBins;
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Decomposes g(x) over the corpus, attributes each active corpus member's
// features with Jacobian projections and serialises everything. When
// g(x) == h0 the attribution section carries status "degenerate_shift".
nlohmann::ordered_json explanation_report(const SplitModel& model,
                                          const Corpus& corpus,
                                          const Eigen::Ref<const Vector>& x,
                                          Index test_index, const Baseline& baseline,
                                          const ExplainSettings& settings);

// Weight bar chart plus one feature-projection chart per active example.
std::string explanation_svg(const nlohmann::ordered_json& report);

// Positive weighted projections push along the test shift.
inline const char* projection_tag(double value) {
  return value >= 0 ? "aligned" : "opposed";
}

}  // namespace simplex

#endif  // SIMPLEX_REPORT_HPP_
