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

#include "stormsift/user/validation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/eval/metrics.hpp"

namespace stormsift::user {

namespace {

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, threads)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            const std::lock_guard lock(mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void summarize(CVReport& r) {
  const auto n = static_cast<double>(r.folds.size());
  const auto field = [](FoldMetrics& m, int k) -> double& {
    switch (k) {
      case 0: return m.precision;
      case 1: return m.recall;
      case 2: return m.f1;
      default: return m.auroc;
    }
  };
  for (int k = 0; k < 4; ++k) {
    double sum = 0.0;
    for (auto& f : r.folds) sum += field(f, k);
    const double mean = sum / n;
    double ss = 0.0;
    for (auto& f : r.folds) ss += (field(f, k) - mean) * (field(f, k) - mean);
    field(r.mean, k) = mean;
    field(r.stddev, k) = r.folds.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  }
}

void write_fold(std::ostream& out, const std::string& label, const FoldMetrics& m) {
  out << label << ',' << format_fixed(m.precision, 6) << ',' << format_fixed(m.recall, 6) << ','
      << format_fixed(m.f1, 6) << ',' << format_fixed(m.auroc, 6) << '\n';
}

}  // namespace

SplitIndices stratified_split(const std::vector<bool>& labels, double test_fraction, Rng& rng) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw Error("user", "test fraction must be in (0, 1)");
  SplitIndices s;
  for (bool cls : {true, false}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) members.push_back(i);
    }
    if (members.size() < 2) throw Error("user", "each class needs at least two rows to split");
    rng.shuffle(std::span<std::size_t>(members));
    auto n_test = static_cast<std::size_t>(std::lround(test_fraction * static_cast<double>(members.size())));
    n_test = std::clamp<std::size_t>(n_test, 1, members.size() - 1);
    s.test.insert(s.test.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_test));
    s.train.insert(s.train.end(), members.begin() + static_cast<std::ptrdiff_t>(n_test), members.end());
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

CVReport cross_validate(ModelKind kind, const Dataset& data, const Hyperparams& hyperparams,
                        std::uint64_t seed, int repeats, double test_fraction, int threads) {
  if (data.size() < 10) throw Error("user", "cross-validation needs at least 10 rows");
  if (repeats < 1) throw Error("user", "cross-validation needs at least one repeat");
  Rng rng(seed);
  std::vector<SplitIndices> splits;
  for (int r = 0; r < repeats; ++r) splits.push_back(stratified_split(data.labels, test_fraction, rng));

  CVReport report;
  report.folds.resize(splits.size());
  parallel_for(splits.size(), threads, [&](std::size_t r) {
    const auto train = data.subset(splits[r].train);
    const auto test = data.subset(splits[r].test);
    const auto model = train_classifier(kind, train, hyperparams, seed + r);
    std::vector<double> p;
    for (const auto& row : test.rows) p.push_back(predict_proba(model, row));
    const auto metrics = eval::precision_recall_f1(eval::confusion(p, test.labels, 0.5));
    report.folds[r] = {metrics.precision, metrics.recall, metrics.f1, eval::auroc(p, test.labels)};
  });
  summarize(report);
  return report;
}

std::vector<Hyperparams> expand_grid(const GridSpec& grid) {
  std::vector<Hyperparams> cells = {Hyperparams{}};
  for (const auto& [name, values] : grid) {
    if (values.empty()) throw Error("user", "grid entry '" + name + "' has no values");
    std::vector<Hyperparams> next;
    for (const auto& cell : cells) {
      for (double v : values) {
        auto c = cell;
        c[name] = v;
        next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

GridSpec default_grid(ModelKind kind) {
  switch (kind) {
    case ModelKind::LogisticRegression:
      return {{"l2", {1e-4, 1e-2, 1.0}}};
    case ModelKind::RandomForest:
      return {{"n_trees", {50, 100}}, {"max_depth", {4, 8, 12}}, {"min_samples_split", {2, 10}}};
    case ModelKind::GradientBoosted:
      return {{"n_stages", {50, 100}}, {"max_depth", {2, 3}}, {"learning_rate", {0.05, 0.1}}};
  }
  return {};
}

GridSearchResult grid_search(ModelKind kind, const Dataset& data, const GridSpec& grid,
                             std::uint64_t seed, int threads) {
  const auto cells = expand_grid(grid);
  for (const auto& c : cells) resolve_hyperparams(kind, c);
  GridSearchResult result;
  result.cells.resize(cells.size());
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    result.cells[i] = {cells[i], cross_validate(kind, data, cells[i], seed)};
  });
  for (std::size_t i = 1; i < result.cells.size(); ++i) {
    if (result.cells[i].report.mean.f1 > result.cells[result.best].report.mean.f1) result.best = i;
  }
  return result;
}

void write_cv_csv(std::ostream& out, const CVReport& report) {
  out << "repeat,precision,recall,f1,auroc\n";
  for (std::size_t i = 0; i < report.folds.size(); ++i) write_fold(out, std::to_string(i + 1), report.folds[i]);
  write_fold(out, "mean", report.mean);
  write_fold(out, "stddev", report.stddev);
}

void write_grid_csv(std::ostream& out, const GridSearchResult& result) {
  out << "cell,hyperparams,precision,recall,f1,auroc,best\n";
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    const auto& c = result.cells[i];
    out << i + 1 << ',' << describe_hyperparams(c.hyperparams) << ',' << format_fixed(c.report.mean.precision, 6)
        << ',' << format_fixed(c.report.mean.recall, 6) << ',' << format_fixed(c.report.mean.f1, 6) << ','
        << format_fixed(c.report.mean.auroc, 6) << ',' << (i == result.best ? 1 : 0) << '\n';
  }
}

}  // namespace stormsift::user
