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

#include "stormsift/eval/metrics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"

namespace stormsift::eval {
namespace {

constexpr const char* kStage = "eval";

void check_aligned(std::size_t a, std::size_t b) {
  if (a != b) throw Error(kStage, "scores and labels differ in length");
}

}  // namespace

PrecisionRecallF1 precision_recall_f1(const ConfusionCounts& c) noexcept {
  PrecisionRecallF1 m;
  if (c.tp + c.fp > 0) m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn > 0) m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  if (m.precision + m.recall > 0.0) m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

ConfusionCounts confusion(std::span<const double> scores, const std::vector<bool>& labels,
                          double threshold) {
  check_aligned(scores.size(), labels.size());
  ConfusionCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    if (predicted && labels[i]) ++c.tp;
    else if (predicted) ++c.fp;
    else if (labels[i]) ++c.fn;
    else ++c.tn;
  }
  return c;
}

double auroc(std::span<const double> scores, const std::vector<bool>& labels) {
  check_aligned(scores.size(), labels.size());
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double n_pos = 0.0;
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    // Tied block shares the mid-rank (1-based ranks i+1..j).
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]]) {
        n_pos += 1.0;
        positive_rank_sum += mid_rank;
      }
    }
    i = j;
  }
  const double n_neg = static_cast<double>(scores.size()) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0) throw Error(kStage, "AUROC needs both classes");
  const double u = positive_rank_sum - n_pos * (n_pos + 1.0) / 2.0;
  return u / (n_pos * n_neg);
}

std::vector<RocPoint> roc_curve(std::span<const double> scores, const std::vector<bool>& labels) {
  check_aligned(scores.size(), labels.size());
  const auto n_pos = static_cast<double>(std::count(labels.begin(), labels.end(), true));
  const double n_neg = static_cast<double>(labels.size()) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0) throw Error(kStage, "ROC curve needs both classes");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::vector<RocPoint> curve;
  curve.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  double tp = 0.0;
  double fp = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double threshold = scores[order[i]];
    while (i < order.size() && scores[order[i]] == threshold) {
      (labels[order[i]] ? tp : fp) += 1.0;
      ++i;
    }
    curve.push_back({threshold, tp / n_pos, fp / n_neg});
  }
  return curve;
}

std::vector<RatioPoint> ratio_curve(std::span<const double> scores, const std::vector<bool>& labels,
                                    std::span<const double> thresholds) {
  check_aligned(scores.size(), labels.size());
  std::vector<RatioPoint> out;
  out.reserve(thresholds.size());
  for (const double theta : thresholds) {
    std::size_t count = 0;
    std::size_t related = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= theta) {
        ++count;
        if (labels[i]) ++related;
      }
    }
    RatioPoint p{theta, std::nullopt, count};
    if (count > 0) p.related_ratio = static_cast<double>(related) / static_cast<double>(count);
    out.push_back(p);
  }
  return out;
}

BestF1 best_f1(std::span<const double> scores, const std::vector<bool>& labels,
               std::span<const double> thresholds) {
  BestF1 best;
  bool first = true;
  for (const double theta : thresholds) {
    const auto m = precision_recall_f1(confusion(scores, labels, theta));
    if (first || m.f1 > best.metrics.f1) {
      best = {theta, m};
      first = false;
    }
  }
  return best;
}

double cohen_kappa(std::span<const int> rater_a, std::span<const int> rater_b) {
  if (rater_a.size() != rater_b.size()) throw Error(kStage, "kappa needs aligned label lists");
  if (rater_a.empty()) throw Error(kStage, "kappa needs at least one item");
  std::map<int, std::pair<double, double>> marginals;
  double agree = 0.0;
  for (std::size_t i = 0; i < rater_a.size(); ++i) {
    marginals[rater_a[i]].first += 1.0;
    marginals[rater_b[i]].second += 1.0;
    if (rater_a[i] == rater_b[i]) agree += 1.0;
  }
  if (marginals.size() < 2) throw Error(kStage, "kappa needs at least two observed categories");
  const auto n = static_cast<double>(rater_a.size());
  const double p_o = agree / n;
  double p_e = 0.0;
  for (const auto& [category, counts] : marginals) p_e += (counts.first / n) * (counts.second / n);
  return (p_o - p_e) / (1.0 - p_e);
}

double light_kappa(std::span<const std::vector<int>> raters) {
  if (raters.size() < 2) throw Error(kStage, "Light's kappa needs at least two raters");
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < raters.size(); ++a) {
    for (std::size_t b = a + 1; b < raters.size(); ++b) {
      sum += cohen_kappa(raters[a], raters[b]);
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

void write_metrics_csv(std::ostream& out, std::span<const MetricRow> rows) {
  out << "metric,value,axis,params\n";
  for (const auto& r : rows) {
    out << r.metric << ',' << format_exact(r.value) << ',' << r.axis << ',' << r.params << '\n';
  }
}

}  // namespace stormsift::eval
