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

#include "stormsift/text/sweep.hpp"

#include <algorithm>
#include <ostream>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/eval/metrics.hpp"

namespace stormsift::text {

std::vector<TextModelParams> make_param_grid(const TextModelParams& base,
                                             std::span<const int> window_sizes,
                                             std::span<const int> dimensions,
                                             std::span<const int> min_counts,
                                             std::span<const int> negative_samples,
                                             std::span<const int> epochs) {
  std::vector<TextModelParams> grid;
  for (int w : window_sizes) {
    for (int d : dimensions) {
      for (int mc : min_counts) {
        for (int neg : negative_samples) {
          for (int ep : epochs) {
            TextModelParams p = base;
            p.window_size = w;
            p.dimension = d;
            p.min_count = mc;
            p.negative_samples = neg;
            p.epochs = ep;
            p.validate();
            grid.push_back(p);
          }
        }
      }
    }
  }
  return grid;
}

SweepReport sweep_hyperparameters(std::span<const LabeledTweet> corpus,
                                  std::span<const TextModelParams> grid,
                                  std::span<const TextFormula> formulas, const std::string& seed_term,
                                  int segment_hours, int threads) {
  if (corpus.empty()) throw Error("text", "sweep needs a labeled corpus");
  if (grid.empty() || formulas.empty()) throw Error("text", "sweep grid is empty");

  std::vector<TokenizedTweet> tweets;
  std::vector<bool> labels;
  tweets.reserve(corpus.size());
  for (const auto& lt : corpus) {
    tweets.push_back(lt.tweet);
    labels.push_back(lt.related);
  }
  const bool both_classes = std::find(labels.begin(), labels.end(), true) != labels.end() &&
                            std::find(labels.begin(), labels.end(), false) != labels.end();
  std::vector<double> thresholds;
  for (int t = 0; t <= 100; ++t) thresholds.push_back(t);

  SweepReport report;
  for (const auto& params : grid) {
    const auto models = train_segments(tweets, params, seed_term, segment_hours, threads);
    for (auto formula : formulas) {
      const auto scored = score_segments(tweets, models, formula, seed_term);
      SweepCell cell;
      cell.params = params;
      cell.formula = formula;
      if (both_classes) cell.auroc = eval::auroc(scored.scores, labels);
      const auto best = eval::best_f1(scored.scores, labels, thresholds);
      cell.f1 = best.metrics.f1;
      cell.precision = best.metrics.precision;
      cell.recall = best.metrics.recall;
      cell.threshold = best.threshold;
      if (!report.cells.empty() && cell.f1 > report.best_cell().f1) report.best = report.cells.size();
      report.cells.push_back(cell);
    }
  }
  return report;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << "window_size,dimension,min_count,negative_samples,epochs,formula,auroc,f1,precision,recall,"
         "threshold,best\n";
  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    const auto& c = report.cells[i];
    out << c.params.window_size << ',' << c.params.dimension << ',' << c.params.min_count << ','
        << c.params.negative_samples << ',' << c.params.epochs << ',' << formula_name(c.formula) << ','
        << (c.auroc ? format_fixed(*c.auroc, 4) : "") << ',' << format_fixed(c.f1, 4) << ','
        << format_fixed(c.precision, 4) << ',' << format_fixed(c.recall, 4) << ','
        << format_fixed(c.threshold, 0) << ',' << (i == report.best ? 1 : 0) << '\n';
  }
}

}  // namespace stormsift::text
