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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stormsift::eval {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
};

struct PrecisionRecallF1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Zero denominators yield 0 for the affected quantity.
PrecisionRecallF1 precision_recall_f1(const ConfusionCounts& c) noexcept;

/// Predicted positive iff score >= threshold.
ConfusionCounts confusion(std::span<const double> scores, const std::vector<bool>& labels,
                          double threshold);

/// Area under the ROC curve, computed through the Mann-Whitney identity:
/// the probability that a random positive outscores a random negative, with
/// ties credited 0.5. Throws stormsift::Error unless both classes occur.
double auroc(std::span<const double> scores, const std::vector<bool>& labels);

struct RocPoint {
  double threshold = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;
};

/// One point per distinct score, descending threshold, plus the (0,0) origin.
std::vector<RocPoint> roc_curve(std::span<const double> scores, const std::vector<bool>& labels);

struct RatioPoint {
  double threshold = 0.0;
  std::optional<double> related_ratio;  ///< absent when nothing reaches the threshold
  std::size_t count = 0;
};

/// Share of related items among those scoring at or above each threshold.
std::vector<RatioPoint> ratio_curve(std::span<const double> scores, const std::vector<bool>& labels,
                                    std::span<const double> thresholds);

struct BestF1 {
  double threshold = 0.0;
  PrecisionRecallF1 metrics;
};

/// Highest F1 over the candidate thresholds; the first best wins ties.
BestF1 best_f1(std::span<const double> scores, const std::vector<bool>& labels,
               std::span<const double> thresholds);

/// Cohen's kappa between two aligned categorical labelings. Throws when the
/// lists differ in length, are empty, or only one category occurs overall.
double cohen_kappa(std::span<const int> rater_a, std::span<const int> rater_b);

/// Light's kappa: unweighted mean of Cohen's kappa across every rater pair.
/// Needs at least two raters.
double light_kappa(std::span<const std::vector<int>> raters);

struct MetricRow {
  std::string metric;
  double value = 0.0;
  std::string axis;
  std::string params;
};

/// CSV with header metric,value,axis,params.
void write_metrics_csv(std::ostream& out, std::span<const MetricRow> rows);

}  // namespace stormsift::eval
