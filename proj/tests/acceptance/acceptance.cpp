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


// Acceptance run: one PASS/FAIL line per criterion with the measured values,
// the pinned tolerances and the wall time.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "stormsift/common/random.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/eval/metrics.hpp"
#include "stormsift/fusion/fusion.hpp"
#include "stormsift/geo/interpolation.hpp"
#include "stormsift/geo/model_selection.hpp"
#include "stormsift/geo/shapiro_wilk.hpp"
#include "stormsift/geo/transforms.hpp"
#include "stormsift/service/pipeline.hpp"
#include "stormsift/service/server.hpp"
#include "stormsift/text/embedding.hpp"
#include "stormsift/text/pipeline.hpp"
#include "stormsift/text/scoring.hpp"
#include "stormsift/user/model.hpp"
#include "stormsift/user/validation.hpp"
#include "support/oracles.hpp"
#include "support/samples.hpp"
#include "support/storm.hpp"
#include "support/text_corpus.hpp"
#include "support/user_generator.hpp"

using namespace stormsift;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!ok) detail += " [x]";
  }
};

std::string num(double v, int digits = 4) { return format_fixed(v, digits); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

struct Criterion {
  std::string name;
  double time_limit_s;  ///< 0 when the criterion has no runtime bound
  std::function<Outcome()> run;
};

Outcome idw_oracle() {
  Outcome out;
  Rng rng(1001);
  double max_err = 0.0;
  int bounded = 0;
  constexpr int kFixtures = 100;
  for (int f = 0; f < kFixtures; ++f) {
    const core::GeoLocation p(rng.uniform(24, 31), rng.uniform(-87, -80));
    std::vector<geo::StationValue> stations;
    const std::size_t n = 1 + rng.below(5);
    for (std::size_t i = 0; i < n; ++i) {
      stations.push_back({core::GeoLocation(rng.uniform(24, 31), rng.uniform(-87, -80)), rng.uniform(0, 150)});
    }
    const double k = rng.uniform(0.5, 4.0);
    const double v = geo::idw_interpolate(p, stations, k);
    const double oracle = testing::idw_oracle(p, stations, k);
    max_err = std::max(max_err, std::abs(v - oracle));
    const auto [lo, hi] = std::minmax_element(stations.begin(), stations.end(),
                                              [](const auto& a, const auto& b) { return a.value < b.value; });
    bounded += v >= lo->value && v <= hi->value ? 1 : 0;
  }
  out.require(max_err <= 1e-9, "max |idw - oracle| = " + sci(max_err) + " (tol 1e-9)");
  out.require(bounded == kFixtures, "bounded " + std::to_string(bounded) + "/" + std::to_string(kFixtures));
  return out;
}

Outcome geo_selection() {
  Outcome out;
  const auto samples = testing::synthetic_storm(3000, 99);
  const auto sel = geo::select_geo_model(samples);
  std::size_t first_minmax = sel.ranking.size();
  double best_minmax = 0.0;
  double best_other = 0.0;
  for (std::size_t r = 0; r < sel.ranking.size(); ++r) {
    const auto& c = sel.candidates[sel.ranking[r]];
    if (c.transform == geo::TransformKind::MinMax) {
      first_minmax = std::min(first_minmax, r);
      best_minmax = std::max(best_minmax, c.shapiro_w);
    } else {
      best_other = std::max(best_other, c.shapiro_w);
    }
  }
  out.require(first_minmax >= 5, "top-5 free of minmax (first minmax at rank " + std::to_string(first_minmax + 1) + ")");
  out.require(best_other > best_minmax, "best log/boxcox W " + num(best_other) + " > best minmax W " + num(best_minmax));

  const auto xs = testing::draw(testing::SampleFamily::LogNormal, 5000, 42);
  std::vector<double> logged;
  for (const double x : xs) logged.push_back(std::log10(x));
  const double gain = geo::shapiro_wilk(logged).w - geo::shapiro_wilk(xs).w;
  out.require(gain >= 0.05, "W(log) - W(raw) = " + num(gain) + " (min 0.05)");
  return out;
}

Outcome boxcox_recovery() {
  Outcome out;
  const auto xs = testing::draw(testing::SampleFamily::LogNormal, 5000, 42);
  const double lambda = geo::fit_boxcox_lambda(xs);
  const double grid = testing::boxcox_grid_lambda(xs, 0.01);
  out.require(std::abs(lambda) <= 0.15, "lambda = " + num(lambda) + " (|lambda| <= 0.15)");
  out.require(std::abs(lambda - grid) <= 0.01, "grid oracle " + num(grid, 2) + " (tol 0.01)");
  return out;
}

Outcome shapiro_reference() {
  Outcome out;
  double max_err = 0.0;
  std::size_t checked = 0;
  for (const auto& [name, expected] : testing::kShapiroReference) {
    for (const auto& s : testing::reference_samples()) {
      if (s.name != name) continue;
      max_err = std::max(max_err, std::abs(geo::shapiro_wilk(testing::draw(s)).w - expected));
      ++checked;
    }
  }
  out.require(checked == 10, std::to_string(checked) + " reference samples");
  out.require(max_err <= 1e-3, "max |W - reference| = " + sci(max_err) + " (tol 1e-3)");
  return out;
}

Outcome text_formulas() {
  using text::TextFormula;
  Outcome out;
  const std::vector<double> alpha = {1.0, 0.0};
  const std::vector<std::vector<double>> taus = {{1.0, 0.0}, {0.0, 1.0}};
  const std::vector<std::span<const double>> t(taus.begin(), taus.end());
  const double fixed_err = std::max({
      std::abs(*text::score_vectors(TextFormula::MCS, alpha, t) - 0.5),
      std::abs(*text::score_vectors(TextFormula::SCSSC, alpha, t) - 1.0 / std::sqrt(2.0)),
      std::abs(*text::score_vectors(TextFormula::DP, alpha, t) - 1.0),
      std::abs(*text::score_vectors(TextFormula::CSTVS, alpha, t) - std::cos(std::acos(-1.0) / 4)),
  });
  out.require(fixed_err <= 1e-12, "fixed vectors max err " + sci(fixed_err) + " (tol 1e-12)");

  Rng rng(5);
  double identity_err = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t dim = 2 + rng.below(20);
    const std::size_t n = 1 + rng.below(30);
    std::vector<double> a(dim);
    for (auto& x : a) x = rng.normal();
    std::vector<std::vector<double>> vs(n, std::vector<double>(dim));
    for (auto& v : vs) {
      for (auto& x : v) x = rng.normal();
    }
    const std::vector<std::span<const double>> spans(vs.begin(), vs.end());
    const double mcs = *text::score_vectors(TextFormula::MCS, a, spans);
    const double scssc = *text::score_vectors(TextFormula::SCSSC, a, spans);
    identity_err = std::max(identity_err, std::abs(scssc - mcs * std::sqrt(static_cast<double>(n))));
  }
  out.require(identity_err <= 1e-9, "SCSSC = MCS*sqrt(n) on 1000 tweets, max err " + sci(identity_err) + " (tol 1e-9)");

  text::TextModelParams params;
  params.window_size = 3;
  params.dimension = 50;
  params.min_count = 1;
  params.epochs = 10;
  params.seed = 17;
  const auto corpus = testing::planted_corpus(800, 0.3, 11);
  std::vector<text::TokenizedTweet> tweets;
  std::vector<bool> labels;
  for (const auto& lt : corpus) {
    tweets.push_back(lt.tweet);
    labels.push_back(lt.related);
  }
  const auto models = text::train_segments(tweets, params, "irma", 1);
  std::vector<double> thresholds;
  for (int th = 0; th <= 100; ++th) thresholds.push_back(th);
  double min_auc = 1.0;
  double f1_dp = 0.0;
  double f1_mcs = 0.0;
  std::string aucs;
  for (auto f : text::kAllTextFormulas) {
    const auto scored = text::score_segments(tweets, models, f, "irma");
    const double auc = eval::auroc(scored.scores, labels);
    min_auc = std::min(min_auc, auc);
    aucs += (aucs.empty() ? "" : " ") + text::formula_name(f) + "=" + num(auc, 3);
    const double f1 = eval::best_f1(scored.scores, labels, thresholds).metrics.f1;
    if (f == TextFormula::DP) f1_dp = f1;
    if (f == TextFormula::MCS) f1_mcs = f1;
  }
  out.require(min_auc >= 0.9, "AUROC " + aucs + " (min 0.9)");
  out.require(f1_dp >= f1_mcs, "F1 DP " + num(f1_dp, 3) + " >= MCS " + num(f1_mcs, 3));
  return out;
}

Outcome embedding_determinism() {
  Outcome out;
  text::TextModelParams params;
  params.window_size = 3;
  params.dimension = 50;
  params.min_count = 1;
  params.epochs = 5;
  params.seed = 23;
  std::vector<std::vector<std::string>> sentences;
  for (const auto& lt : testing::planted_corpus(400, 0.3, 3)) sentences.push_back(lt.tweet.tokens);
  const auto a = text::train_embeddings(sentences, params, "hour-0");
  const auto b = text::train_embeddings(sentences, params, "hour-0");
  bool bitwise = a.size() == b.size() && a.tokens() == b.tokens();
  for (std::size_t i = 0; bitwise && i < a.size(); ++i) {
    const auto va = a.vector_at(i);
    const auto vb = b.vector_at(i);
    bitwise = std::equal(va.begin(), va.end(), vb.begin(), vb.end(),
                         [](double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; });
  }
  out.require(bitwise, std::to_string(a.size()) + " tokens x " + std::to_string(a.dimension()) + " dims bitwise equal");
  return out;
}

Outcome user_classifiers() {
  using user::ModelKind;
  Outcome out;
  const auto accuracy = [](const user::TrainedUserModel& m, const user::Dataset& d) {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < d.size(); ++i) ok += (user::predict_proba(m, d.rows[i]) >= 0.5) == d.labels[i];
    return static_cast<double>(ok) / static_cast<double>(d.size());
  };
  const auto xor_data = testing::xor_dataset();
  double rf_xor = 1.0;
  for (int depth : {2, 3, 6}) {
    rf_xor = std::min(rf_xor, accuracy(user::train_classifier(ModelKind::RandomForest, xor_data, {{"max_depth", depth}}, 7), xor_data));
  }
  const double lr_xor = accuracy(user::train_classifier(ModelKind::LogisticRegression, xor_data, {}, 7), xor_data);
  out.require(rf_xor == 1.0, "XOR RF acc " + num(rf_xor, 2));
  out.require(lr_xor <= 0.75, "XOR LR acc " + num(lr_xor, 2) + " (max 0.75)");

  const auto d = testing::verified_users(2000, 20, 81);
  Rng rng(82);
  const auto split = user::stratified_split(d.labels, 0.3, rng);
  const auto train = d.subset(split.train);
  const auto test = d.subset(split.test);
  const auto rf = user::train_classifier(ModelKind::RandomForest, train, {}, 83);
  const auto lr = user::train_classifier(ModelKind::LogisticRegression, train, {}, 83);
  std::vector<double> p_rf, p_lr;
  for (const auto& row : test.rows) {
    p_rf.push_back(user::predict_proba(rf, row));
    p_lr.push_back(user::predict_proba(lr, row));
  }
  const double auc_rf = eval::auroc(p_rf, test.labels);
  const double f1_rf = eval::precision_recall_f1(eval::confusion(p_rf, test.labels, 0.5)).f1;
  const double f1_lr = eval::precision_recall_f1(eval::confusion(p_lr, test.labels, 0.5)).f1;
  out.require(auc_rf >= 0.95, "RF test AUROC " + num(auc_rf, 3) + " (min 0.95)");
  out.require(f1_rf > f1_lr, "F1 RF " + num(f1_rf, 3) + " > LR " + num(f1_lr, 3));

  const auto planted = testing::determined_by_first(500, 41);
  const auto imp = user::gini_importance(user::train_classifier(ModelKind::RandomForest, planted, {}, 42));
  double sum = 0.0;
  for (const auto& [name, v] : imp) sum += v;
  out.require(std::abs(sum - 1.0) <= 1e-9, "importance sum err " + sci(std::abs(sum - 1.0)) + " (tol 1e-9)");
  out.require(imp[0].second >= 0.9, "planted feature importance " + num(imp[0].second, 3) + " (min 0.9)");
  return out;
}

Outcome auroc_oracle() {
  Outcome out;
  Rng rng(4242);
  double max_err = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(19);
    std::vector<double> s(n);
    std::vector<bool> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.below(6));
      y[i] = rng.bernoulli(0.5);
    }
    y[0] = true;
    y[1] = false;
    max_err = std::max(max_err, std::abs(eval::auroc(s, y) - testing::pairwise_concordance(s, y)));
  }
  out.require(max_err <= 1e-12, "200 tied sets, max err " + sci(max_err) + " (tol 1e-12)");
  return out;
}

fusion::ScoreVector random_vector(Rng& rng) {
  const auto draw = [&] { return rng.bernoulli(0.5) ? static_cast<double>(rng.below(101)) : rng.uniform(0.0, 100.0); };
  return {draw(), draw(), draw(), rng.bernoulli(0.3) ? 0.0 : draw()};
}

Outcome fusion_semantics() {
  using fusion::ThresholdVector;
  Outcome out;
  Rng rng(2024);
  std::vector<fusion::ScoredTweet> stream(10000);
  std::vector<fusion::ScoreVector> vectors;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    stream[i].tweet.id = std::to_string(i);
    stream[i].scores = random_vector(rng);
    vectors.push_back(stream[i].scores);
  }
  std::size_t monotone_bad = 0, boundary_bad = 0, image_bad = 0, idem_bad = 0;
  for (const auto& v : vectors) {
    const ThresholdVector t{static_cast<double>(rng.below(101)), static_cast<double>(rng.below(101)),
                            static_cast<double>(rng.below(101)), static_cast<double>(rng.below(101))};
    auto raised = t;
    const auto axis = fusion::kAllAxes[rng.below(4)];
    raised.set(axis, std::min(100.0, t.get(axis) + static_cast<double>(rng.below(30))));
    if (fusion::passes_thresholds(v, raised) && !fusion::passes_thresholds(v, t)) ++monotone_bad;
    if (!fusion::passes_thresholds(v, {v.geo, v.text, v.user, v.image})) ++boundary_bad;
    if (v.image == 0.0 && fusion::passes_thresholds(v, {0, 0, 0, 1})) ++image_bad;
  }
  for (int trial = 0; trial < 20; ++trial) {
    const ThresholdVector t{static_cast<double>(rng.below(101)), static_cast<double>(rng.below(101)),
                            static_cast<double>(rng.below(101)), static_cast<double>(rng.below(101))};
    const auto once = fusion::filter_stream(stream, t);
    const auto twice = fusion::filter_stream(once, t);
    if (once.size() != twice.size() ||
        !std::equal(once.begin(), once.end(), twice.begin(), [](const auto& a, const auto& b) { return a.tweet.id == b.tweet.id; })) {
      ++idem_bad;
    }
  }
  std::size_t cdf_bad = 0;
  const auto thresholds = fusion::default_cdf_thresholds();
  for (auto a : fusion::kAllAxes) {
    const auto curve = fusion::cdf_pass_rate(vectors, a, thresholds);
    for (std::size_t i = 1; i < curve.size(); ++i) cdf_bad += curve[i].fraction > curve[i - 1].fraction ? 1 : 0;
  }
  out.require(monotone_bad == 0, "AND-monotonicity violations " + std::to_string(monotone_bad));
  out.require(boundary_bad == 0, "s = t rejections " + std::to_string(boundary_bad));
  out.require(image_bad == 0, "image 0 passing image_min 1: " + std::to_string(image_bad));
  out.require(idem_bad == 0, "non-idempotent filters " + std::to_string(idem_bad));
  out.require(cdf_bad == 0, "CDF increases " + std::to_string(cdf_bad) + " over 10000 vectors");
  return out;
}

const std::string kScenarioConfig = std::string(STORMSIFT_DATA_DIR) + "/scenario/scenario.conf";

std::string filter_and_report(const service::StoreSnapshot& snap) {
  std::ostringstream os;
  fusion::write_scored_ndjson(os, fusion::filter_stream(snap.tweets(), snap.config().thresholds));
  const auto thresholds = fusion::default_cdf_thresholds();
  fusion::write_cdf_csv(os, snap.scores(), thresholds);
  return os.str();
}

Outcome end_to_end_determinism() {
  Outcome out;
  const auto config = service::load_config(kScenarioConfig);
  const auto start = std::chrono::steady_clock::now();
  const auto a = service::run_pipeline(config);
  const std::string report_a = filter_and_report(a);
  const std::chrono::duration<double> first = std::chrono::steady_clock::now() - start;
  const auto b = service::run_pipeline(config);
  const std::string report_b = filter_and_report(b);

  const auto& m = a.manifest();
  out.require(a.size() == 1000 && m.get("ingest.track_points") == "72" && m.get("ingest.sensor_readings") == "720",
              std::to_string(a.size()) + " tweets, " + m.get("ingest.sensor_readings").value_or("?") +
                  " readings from 10 stations, " + m.get("ingest.track_points").value_or("?") + " track points");
  out.require(m.deterministic_text() == b.manifest().deterministic_text(), "manifests identical (hash " + m.hash + ")");
  out.require(report_a == report_b, "filter + CDF report identical");
  out.require(first.count() < 60.0, "single run " + num(first.count(), 2) + " s (limit 60 s)");
  return out;
}

Outcome api_equivalence() {
  Outcome out;
  service::SnapshotStore store;
  store.publish(std::make_shared<const service::StoreSnapshot>(service::run_pipeline(service::load_config(kScenarioConfig))));
  const auto snap = store.current();
  service::MockMapProvider maps;
  service::ApiServer server(store, maps);
  const int port = server.start("127.0.0.1", 0);
  httplib::Client client("127.0.0.1", port);

  std::vector<std::string> api_ids;
  std::size_t total = 0;
  bool http_ok = true;
  for (int page = 0; http_ok; ++page) {
    const auto res = client.Get("/tweets?geo_min=50&text_min=30&user_min=85&image_min=85&page_size=7&page=" +
                                std::to_string(page));
    if (!res || res->status != 200) {
      http_ok = false;
      break;
    }
    const auto body = nlohmann::json::parse(res->body);
    total = body["total"].get<std::size_t>();
    if (body["records"].empty()) break;
    for (const auto& r : body["records"]) api_ids.push_back(r["id"].get<std::string>());
  }
  server.stop();

  std::vector<std::string> oracle;
  for (const auto& t : fusion::filter_stream(snap->tweets(), fusion::kRecommendedThresholds)) oracle.push_back(t.tweet.id);
  out.require(http_ok, "HTTP responses 200");
  out.require(api_ids == oracle, "GET /tweets (50,30,85,85) returned " + std::to_string(api_ids.size()) +
                                     " ids, filter_stream " + std::to_string(oracle.size()));
  out.require(total == oracle.size(), "reported total " + std::to_string(total));
  return out;
}

Outcome kappa() {
  Outcome out;
  const std::vector<int> a{1, 0, 1, 1, 0, 2};
  const double identical = eval::cohen_kappa(a, a);
  const std::vector<int> constant{1, 1, 1, 1};
  const std::vector<int> balanced{1, 0, 1, 0};
  const double zero = eval::cohen_kappa(constant, balanced);
  out.require(identical == 1.0, "identical raters kappa = " + format_exact(identical) + " (exact)");
  out.require(std::abs(zero) <= 1e-12, "constant vs balanced kappa = " + sci(zero) + " (tol 1e-12)");
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"idw-oracle-equivalence", 1.0, idw_oracle},
      {"geo-selection-normality", 30.0, geo_selection},
      {"boxcox-lambda-recovery", 5.0, boxcox_recovery},
      {"shapiro-wilk-reference", 0.0, shapiro_reference},
      {"text-formulas", 60.0, text_formulas},
      {"embedding-determinism", 0.0, embedding_determinism},
      {"user-classifiers", 60.0, user_classifiers},
      {"auroc-oracle-equivalence", 0.0, auroc_oracle},
      {"fusion-semantics", 0.0, fusion_semantics},
      {"end-to-end-determinism", 120.0, end_to_end_determinism},
      {"api-oracle-equivalence", 0.0, api_equivalence},
      {"kappa", 0.0, kappa},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::string timing = num(elapsed.count(), 3) + " s";
    if (c.time_limit_s > 0.0) {
      const bool in_time = elapsed.count() < c.time_limit_s;
      o.pass = o.pass && in_time;
      timing += " (limit " + num(c.time_limit_s, 0) + " s)" + (in_time ? "" : " [x]");
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %-26s %s | %s\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(), timing.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
