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

// Writes the synthetic datasets used by the benchmarks as CSV files:
//   simplex_datagen tabular --rows 2000 --shift 3 --seed 11 --out data/
//   simplex_datagen ar --count 100 --seed 1 [--oscillating] --out data/

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "simplex/datasets.hpp"
#include "simplex/error.hpp"

int main(int argc, char** argv) {
  using namespace simplex;
  namespace fs = std::filesystem;
  CLI::App app{"Synthetic data for simplex"};
  app.require_subcommand(1);
  std::string out = ".";
  std::uint64_t seed = 0;
  app.add_option("--out", out, "output directory");
  app.add_option("--seed", seed, "generator seed");

  auto* tabular = app.add_subcommand("tabular", "two-class mixture plus a shifted copy");
  tabular->fallthrough();
  Index rows = 1000, features = 10, shifted_features = 2;
  double shift = 3.0;
  tabular->add_option("--rows", rows, "rows per group");
  tabular->add_option("--features", features, "feature count");
  tabular->add_option("--shift", shift, "translation of the shifted group");
  tabular->add_option("--shifted-features", shifted_features, "leading features translated");

  auto* ar = app.add_subcommand("ar", "windowed AR(2) forecasting data");
  ar->fallthrough();
  Ar2Config ar_cfg;
  bool oscillating = false;
  ar->add_option("--phi1", ar_cfg.phi1);
  ar->add_option("--phi2", ar_cfg.phi2);
  ar->add_option("--sigma", ar_cfg.noise_sigma, "noise standard deviation");
  ar->add_option("--length", ar_cfg.length);
  ar->add_option("--window", ar_cfg.window);
  ar->add_option("--count", ar_cfg.count, "number of series");
  ar->add_flag("--oscillating", oscillating, "negate phi1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorKind::kUsage);
  }

  try {
    fs::create_directories(out);
    if (tabular->parsed()) {
      if (features < 1 || shifted_features < 0 || shifted_features > features) {
        throw UsageError("need 0 <= shifted-features <= features and features >= 1");
      }
      Vector offset = Vector::Zero(features);
      offset.head(shifted_features).setConstant(shift);
      const ShiftedPair pair = gen_tabular_shifted(rows, offset, seed);
      write_csv((fs::path(out) / "in_distribution.csv").string(),
                to_table(pair.in_distribution, LossKind::kCrossEntropy));
      write_csv((fs::path(out) / "shifted.csv").string(),
                to_table(pair.shifted, LossKind::kCrossEntropy));
    } else {
      ar_cfg.seed = seed;
      ar_cfg.sign_flip = oscillating;
      write_csv((fs::path(out) / (oscillating ? "ar_oscillating.csv" : "ar.csv")).string(),
                to_table(gen_ar2(ar_cfg), LossKind::kMse));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  }
  return 0;
}
