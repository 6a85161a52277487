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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stormsift/user/features.hpp"
#include "stormsift/user/tree.hpp"

namespace stormsift::user {

enum class ModelKind { LogisticRegression, RandomForest, GradientBoosted };

std::string model_kind_name(ModelKind kind);
/// Accepts "logistic_regression"/"lr", "random_forest"/"rf", "gradient_boosted"/"gb".
ModelKind parse_model_kind(std::string_view name);

/// Named numeric hyperparameters. Recognized names per kind:
///   logistic_regression  l2, max_iter, tolerance
///   random_forest        n_trees, max_depth, min_samples_split, max_leaf_nodes, max_features, bootstrap
///   gradient_boosted     n_stages, learning_rate, max_depth, min_samples_split, max_leaf_nodes
/// max_depth, max_leaf_nodes and max_features use 0 for "no limit" (max_features 0 = sqrt of the
/// feature count for forests).
using Hyperparams = std::map<std::string, double>;

Hyperparams default_hyperparams(ModelKind kind);

/// Defaults overlaid with `overrides`; throws on names the kind does not use.
Hyperparams resolve_hyperparams(ModelKind kind, const Hyperparams& overrides);

std::string describe_hyperparams(const Hyperparams& hp);

inline constexpr double kProbabilityFloor = 1e-9;

struct TrainedUserModel {
  ModelKind kind = ModelKind::LogisticRegression;
  std::uint64_t seed = 0;
  std::vector<std::string> feature_names;
  Hyperparams hyperparams;
  double calibration_min = 0.0;  ///< log-probability bounds on the training set
  double calibration_max = 0.0;

  // Logistic regression on standardized features; weights[0] is the bias.
  std::vector<double> means;
  std::vector<double> scales;
  std::vector<double> weights;

  // Tree ensembles. Forest leaves hold positive ratios; boosted leaves hold
  // shrunken log-odds steps added to base_score.
  std::vector<DecisionTree> trees;
  double base_score = 0.0;
};

/// Throws stormsift::Error unless both classes are present. `threads` only
/// affects speed: forests give identical trees for any thread count.
TrainedUserModel train_classifier(ModelKind kind, const Dataset& data, const Hyperparams& hyperparams,
                                  std::uint64_t seed, int threads = 1);

double predict_proba(const TrainedUserModel& model, std::span<const double> row);
double predict_proba(const TrainedUserModel& model, const UserFeatures& features);

/// log(clamp(p, 1e-9, 1)) rescaled to 0-100 against the calibration bounds.
double user_score(const TrainedUserModel& model, double probability);

/// Mean impurity decrease per feature over all splits, each tree normalized
/// then averaged, summing to 1 (all zeros when no tree splits). Throws for
/// logistic regression.
std::vector<std::pair<std::string, double>> gini_importance(const TrainedUserModel& model);

void save_model(std::ostream& out, const TrainedUserModel& model);
TrainedUserModel load_model(std::istream& in);

}  // namespace stormsift::user
