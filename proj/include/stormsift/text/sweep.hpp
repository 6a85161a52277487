// Copyright 2026 The StormSift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stormsift/text/pipeline.hpp"

namespace stormsift::text {

struct LabeledTweet {
  TokenizedTweet tweet;
  bool related = false;
};

/// Cross product of the listed values; seed and learning rate come from `base`.
std::vector<TextModelParams> make_param_grid(const TextModelParams& base,
                                             std::span<const int> window_sizes,
                                             std::span<const int> dimensions,
                                             std::span<const int> min_counts,
                                             std::span<const int> negative_samples,
                                             std::span<const int> epochs);

struct SweepCell {
  TextModelParams params;
  TextFormula formula = TextFormula::DP;
  std::optional<double> auroc;  ///< absent when the labels hold a single class
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double threshold = 0.0;  ///< text score cut-off that achieved the F1
};

struct SweepReport {
  std::vector<SweepCell> cells;  ///< grid order, formulas innermost
  std::size_t best = 0;          ///< highest F1; earliest cell wins ties

  const SweepCell& best_cell() const { return cells.at(best); }
};

/// Trains once per grid point and scores every formula against the labels.
/// F1 is the best over integer text-score thresholds 0..100.
SweepReport sweep_hyperparameters(std::span<const LabeledTweet> corpus,
                                  std::span<const TextModelParams> grid,
                                  std::span<const TextFormula> formulas, const std::string& seed_term,
                                  int segment_hours = 1, int threads = 1);

/// CSV: window_size,dimension,min_count,negative_samples,epochs,formula,auroc,f1,precision,recall,threshold,best
void write_sweep_csv(std::ostream& out, const SweepReport& report);

}  // namespace stormsift::text
