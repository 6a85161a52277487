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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stormsift/common/error.hpp"
#include "stormsift/common/random.hpp"
#include "stormsift/eval/metrics.hpp"
#include "support/oracles.hpp"

using namespace stormsift;
using namespace stormsift::eval;

TEST_CASE("precision, recall and F1") {
  auto m = precision_recall_f1({1, 1, 0, 0});
  CHECK(m.precision == 0.5);
  CHECK(m.recall == 1.0);
  CHECK(m.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  m = precision_recall_f1({0, 3, 4, 2});
  CHECK(m.precision == 0.0);
  CHECK(m.recall == 0.0);
  CHECK(m.f1 == 0.0);

  m = precision_recall_f1({5, 0, 5, 0});
  CHECK(m.precision == 1.0);
  CHECK(m.recall == 1.0);
  CHECK(m.f1 == 1.0);

  m = precision_recall_f1({});
  CHECK(m.f1 == 0.0);
}

TEST_CASE("F1 lies between precision and recall") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    ConfusionCounts c{1 + rng.below(50), rng.below(50), rng.below(50), rng.below(50)};
    const auto m = precision_recall_f1(c);
    CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-15);
    CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-15);
  }
}

TEST_CASE("confusion counts") {
  const std::vector<double> s{0.1, 0.4, 0.6, 0.9};
  const std::vector<bool> y{false, false, true, true};
  auto c = confusion(s, y, 0.5);
  CHECK(c.tp == 2);
  CHECK(c.tn == 2);
  CHECK(c.fp == 0);
  CHECK(c.fn == 0);
  c = confusion(s, y, 0.0);
  CHECK(c.fn == 0);
  CHECK(c.tn == 0);
  CHECK(c.total() == 4);
  CHECK_THROWS_AS(confusion(s, std::vector<bool>{true}, 0.5), Error);
}

TEST_CASE("auroc edge cases") {
  const std::vector<double> s{1, 2, 3, 4};
  CHECK(auroc(s, {false, false, true, true}) == 1.0);
  CHECK(auroc(s, {true, true, false, false}) == 0.0);
  CHECK(auroc(std::vector<double>{1, 1, 1, 1}, {true, false, true, false}) == 0.5);
  CHECK_THROWS_AS(auroc(s, {true, true, true, true}), Error);
}

TEST_CASE("auroc matches exhaustive pairwise concordance") {
  Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng.below(19);
    std::vector<double> s(n);
    std::vector<bool> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.below(6));  // plenty of ties
      y[i] = rng.bernoulli(0.5);
    }
    y[0] = true;
    y[1] = false;
    CHECK(std::abs(auroc(s, y) - testing::pairwise_concordance(s, y)) <= 1e-12);
  }
}

TEST_CASE("auroc symmetry and monotone invariance") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 10 + rng.below(50);
    std::vector<double> s(n), neg(n), cubed(n);
    std::vector<bool> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = rng.normal();
      neg[i] = -s[i];
      cubed[i] = std::exp(3.0 * s[i]) + 2.0;
      y[i] = rng.bernoulli(0.4);
    }
    y[0] = true;
    y[1] = false;
    CHECK(auroc(s, y) + auroc(neg, y) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(auroc(cubed, y) == doctest::Approx(auroc(s, y)).epsilon(1e-12));
  }
}

TEST_CASE("roc curve runs from origin to (1,1)") {
  const std::vector<double> s{0.2, 0.8, 0.8, 0.4, 0.9};
  const std::vector<bool> y{false, true, false, true, true};
  const auto curve = roc_curve(s, y);
  REQUIRE(curve.size() == 5);
  CHECK(curve.front().tpr == 0.0);
  CHECK(curve.front().fpr == 0.0);
  CHECK(curve.back().tpr == 1.0);
  CHECK(curve.back().fpr == 1.0);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].tpr >= curve[i - 1].tpr);
    CHECK(curve[i].fpr >= curve[i - 1].fpr);
  }
}

TEST_CASE("ratio curve") {
  const std::vector<double> s{1, 2, 3, 4, 5, 6};
  const std::vector<bool> y{false, false, true, false, true, true};
  const std::vector<double> th{0, 3.5, 5.5, 7};
  const auto r = ratio_curve(s, y, th);
  REQUIRE(r.size() == 4);
  CHECK(*r[0].related_ratio == 0.5);
  CHECK(*r[1].related_ratio == doctest::Approx(2.0 / 3.0));
  CHECK(*r[2].related_ratio == 1.0);
  CHECK_FALSE(r[3].related_ratio.has_value());
  CHECK(r[3].count == 0);
}

TEST_CASE("ratio curve on a planted fixture tends to one") {
  Rng rng(8);
  std::vector<double> s;
  std::vector<bool> y;
  for (int i = 0; i < 2000; ++i) {
    const double score = rng.uniform(0, 100);
    s.push_back(score);
    y.push_back(score > 80 ? true : rng.bernoulli(score / 100.0));
  }
  std::vector<double> th;
  for (int t = 0; t <= 90; t += 10) th.push_back(t);
  const auto r = ratio_curve(s, y, th);
  CHECK(*r.back().related_ratio == 1.0);
  CHECK(*r.back().related_ratio > *r.front().related_ratio);
}

TEST_CASE("best_f1 picks the first maximizing threshold") {
  const std::vector<double> s{10, 20, 30, 40};
  const std::vector<bool> y{false, false, true, true};
  const std::vector<double> th{0, 25, 26, 35};
  const auto b = best_f1(s, y, th);
  CHECK(b.threshold == 25);
  CHECK(b.metrics.f1 == 1.0);
}

TEST_CASE("cohen kappa") {
  const std::vector<int> a{1, 0, 1, 1, 0, 2};
  CHECK(cohen_kappa(a, a) == 1.0);

  // Constant rater versus a balanced one: p_o = 0.5 = p_e.
  const std::vector<int> constant{1, 1, 1, 1};
  const std::vector<int> balanced{1, 0, 1, 0};
  CHECK(std::abs(cohen_kappa(constant, balanced) - 0.0) <= 1e-12);

  // p_o = 0.8, p_e = 0.5*0.7 + 0.5*0.3 = 0.5 -> kappa = 0.6
  const std::vector<int> x{1, 1, 1, 1, 1, 0, 0, 0, 0, 0};
  const std::vector<int> z{1, 1, 1, 1, 1, 1, 0, 0, 0, 1};
  CHECK(cohen_kappa(x, z) == doctest::Approx(0.6).epsilon(1e-12));

  CHECK_THROWS_AS(cohen_kappa(constant, constant), Error);
  CHECK_THROWS_AS(cohen_kappa(a, constant), Error);
}

TEST_CASE("kappa is at most one and equals one only for identical labelings") {
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 5 + rng.below(30);
    std::vector<int> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<int>(rng.below(3));
      b[i] = rng.bernoulli(0.7) ? a[i] : static_cast<int>(rng.below(3));
    }
    a[0] = 0;
    a[1] = 1;
    const double k = cohen_kappa(a, b);
    CHECK(k <= 1.0 + 1e-15);
    CHECK((k == 1.0) == (a == b));
  }
}

TEST_CASE("light kappa averages pairwise kappas") {
  const std::vector<std::vector<int>> raters{{1, 1, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}};
  const double k01 = cohen_kappa(raters[0], raters[1]);
  const double k02 = cohen_kappa(raters[0], raters[2]);
  const double k12 = cohen_kappa(raters[1], raters[2]);
  CHECK(light_kappa(raters) == doctest::Approx((k01 + k02 + k12) / 3.0).epsilon(1e-15));
  CHECK(light_kappa(std::vector<std::vector<int>>{raters[0], raters[0]}) == 1.0);
  CHECK_THROWS_AS(light_kappa(std::vector<std::vector<int>>{raters[0]}), Error);
}

TEST_CASE("metrics csv") {
  std::ostringstream os;
  const std::vector<MetricRow> rows{{"f1", 0.5, "geo", "k=2"}};
  write_metrics_csv(os, rows);
  CHECK(os.str() == "metric,value,axis,params\nf1,0.5,geo,k=2\n");
}
