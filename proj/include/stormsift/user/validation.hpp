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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "stormsift/common/random.hpp"
#include "stormsift/user/model.hpp"

namespace stormsift::user {

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per-class shuffle with round(test_fraction * class size) test items
/// (at least one, never the whole class). Indices come back ascending.
SplitIndices stratified_split(const std::vector<bool>& labels, double test_fraction, Rng& rng);

struct FoldMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double auroc = 0.0;
};

struct CVReport {
  std::vector<FoldMetrics> folds;
  FoldMetrics mean;
  FoldMetrics stddev;  ///< sample standard deviation across folds
};

inline constexpr int kCvRepeats = 10;
inline constexpr double kCvTestFraction = 0.3;

/// Repeated random stratified 70/30 splits. Each repeat trains a fresh model
/// and scores the held-out part; predicted positive means p >= 0.5.
/// Needs >= 10 rows and at least two of each class.
CVReport cross_validate(ModelKind kind, const Dataset& data, const Hyperparams& hyperparams,
                        std::uint64_t seed, int repeats = kCvRepeats,
                        double test_fraction = kCvTestFraction, int threads = 1);

/// Hyperparameter name with its candidate values; cells are the cross
/// product, the first entry varying slowest.
using GridSpec = std::vector<std::pair<std::string, std::vector<double>>>;

std::vector<Hyperparams> expand_grid(const GridSpec& grid);

GridSpec default_grid(ModelKind kind);

struct GridCell {
  Hyperparams hyperparams;
  CVReport report;
};

struct GridSearchResult {
  std::vector<GridCell> cells;
  std::size_t best = 0;  ///< highest mean F1, earliest cell on ties

  const GridCell& best_cell() const { return cells.at(best); }
};

GridSearchResult grid_search(ModelKind kind, const Dataset& data, const GridSpec& grid,
                             std::uint64_t seed, int threads = 1);

/// CSV: repeat,precision,recall,f1,auroc with trailing mean and stddev rows.
void write_cv_csv(std::ostream& out, const CVReport& report);

/// CSV: one row per cell with its hyperparameters and mean metrics.
void write_grid_csv(std::ostream& out, const GridSearchResult& result);

}  // namespace stormsift::user
