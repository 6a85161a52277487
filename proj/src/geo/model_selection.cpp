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

#include "stormsift/geo/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "stormsift/common/error.hpp"
#include "stormsift/common/random.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/eval/metrics.hpp"
#include "stormsift/geo/shapiro_wilk.hpp"

namespace stormsift::geo {
namespace {

constexpr const char* kStage = "geo";

std::vector<std::size_t> normality_subsample(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (n <= kShapiroWilkMaxN) return idx;
  Rng rng(seed);
  for (std::size_t i = 0; i < kShapiroWilkMaxN; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(kShapiroWilkMaxN);
  std::sort(idx.begin(), idx.end());
  return idx;
}

void score_candidate(GeoCandidate& c, std::span<const double> raw,
                     const std::vector<bool>& labels, const std::vector<std::size_t>& sw_index,
                     const GeoSelectionConfig& config) {
  std::vector<double> t;
  switch (c.transform) {
    case TransformKind::MinMax:
      t.assign(raw.begin(), raw.end());
      break;
    case TransformKind::Log10:
      t = transform_log10(raw, config.epsilon);
      break;
    case TransformKind::BoxCox: {
      if (raw.size() < kBoxCoxMinSamples) {
        c.excluded = "fewer than " + std::to_string(kBoxCoxMinSamples) + " samples for Box-Cox";
        return;
      }
      std::vector<double> floored(raw.begin(), raw.end());
      for (double& x : floored) x = std::max(x, config.epsilon);
      if (std::all_of(floored.begin(), floored.end(), [&](double x) { return x == floored[0]; })) {
        c.excluded = "constant scores";
        return;
      }
      auto fit = transform_boxcox(raw, config.epsilon);
      c.lambda = fit.lambda;
      t = std::move(fit.values);
      break;
    }
  }

  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  c.train_min = *lo;
  c.train_max = *hi;
  if (!(c.train_max > c.train_min) || !std::isfinite(c.train_max - c.train_min)) {
    c.excluded = "constant scores";
    return;
  }
  if (sw_index.size() < kShapiroWilkMinN) {
    c.excluded = "fewer than 3 samples";
    return;
  }

  std::vector<double> sample;
  sample.reserve(sw_index.size());
  for (const auto i : sw_index) sample.push_back(t[i]);
  try {
    c.shapiro_w = shapiro_wilk(sample).w;
  } catch (const Error& e) {
    c.excluded = e.what();
    return;
  }

  const double range = c.train_max - c.train_min;
  std::vector<double> u;
  u.reserve(t.size());
  for (const double v : t) u.push_back((v - c.train_min) / range);
  const auto n = static_cast<double>(u.size());
  c.mean = std::accumulate(u.begin(), u.end(), 0.0) / n;
  double ss = 0.0;
  for (const double v : u) ss += (v - c.mean) * (v - c.mean);
  c.stddev = std::sqrt(ss / n);
  const auto within = std::count_if(u.begin(), u.end(), [&](double v) {
    return std::abs(v - c.mean) <= c.stddev;
  });
  c.pct_within_1sd = static_cast<double>(within) / n;

  const bool both = std::find(labels.begin(), labels.end(), true) != labels.end() &&
                    std::find(labels.begin(), labels.end(), false) != labels.end();
  if (both) {
    std::vector<double> scaled;
    scaled.reserve(u.size());
    for (const double v : u) scaled.push_back(100.0 * v);
    std::vector<double> thresholds(101);
    std::iota(thresholds.begin(), thresholds.end(), 0.0);
    const auto best = eval::best_f1(scaled, labels, thresholds);
    c.best_f1 = best.metrics.f1;
    c.best_f1_threshold = best.threshold;
  }
}

}  // namespace

std::string_view transform_name(TransformKind kind) noexcept {
  switch (kind) {
    case TransformKind::MinMax: return "minmax";
    case TransformKind::Log10: return "log10";
    case TransformKind::BoxCox: return "boxcox";
  }
  return "?";
}

std::optional<TransformKind> parse_transform(std::string_view name) noexcept {
  for (const auto k : kAllTransforms) {
    if (transform_name(k) == name) return k;
  }
  return std::nullopt;
}

double apply_transform(TransformKind kind, double lambda, double raw, double epsilon) noexcept {
  switch (kind) {
    case TransformKind::MinMax: return raw;
    case TransformKind::Log10: return std::log10(std::max(raw, epsilon));
    case TransformKind::BoxCox: return boxcox(std::max(raw, epsilon), lambda);
  }
  return raw;
}

GeoModelSelection select_geo_model(std::span<const LabeledGeoFeatures> samples,
                                   const GeoSelectionConfig& config) {
  if (samples.empty()) throw Error(kStage, "model selection needs labeled samples");
  if (config.top_k == 0) throw Error(kStage, "top_k must be positive");

  std::vector<bool> labels;
  labels.reserve(samples.size());
  for (const auto& s : samples) labels.push_back(s.related);
  const auto sw_index = normality_subsample(samples.size(), config.seed);

  GeoModelSelection sel;
  std::vector<double> raw(samples.size());
  for (const auto f : kAllGeoFunctions) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      raw[i] = eval_geo_function(f, samples[i].features, config.d_min_miles);
    }
    for (const auto kind : kAllTransforms) {
      GeoCandidate c;
      c.function = f;
      c.transform = kind;
      score_candidate(c, raw, labels, sw_index, config);
      sel.candidates.push_back(std::move(c));
    }
  }

  for (std::size_t i = 0; i < sel.candidates.size(); ++i) {
    if (!sel.candidates[i].excluded) sel.ranking.push_back(i);
  }
  if (sel.ranking.empty()) throw Error(kStage, "every candidate model was degenerate");

  const auto centre_gap = [&](std::size_t i) { return std::abs(sel.candidates[i].mean - 0.5); };
  std::stable_sort(sel.ranking.begin(), sel.ranking.end(), [&](std::size_t a, std::size_t b) {
    const auto& ca = sel.candidates[a];
    const auto& cb = sel.candidates[b];
    if (ca.shapiro_w != cb.shapiro_w) return ca.shapiro_w > cb.shapiro_w;
    return centre_gap(a) < centre_gap(b);
  });

  const std::size_t top = std::min(config.top_k, sel.ranking.size());
  std::size_t best = sel.ranking[0];
  for (std::size_t r = 1; r < top; ++r) {
    const std::size_t i = sel.ranking[r];
    if (centre_gap(i) < centre_gap(best) || (centre_gap(i) == centre_gap(best) && i < best)) best = i;
  }
  sel.chosen = best;
  sel.candidates[best].chosen = true;

  const auto& c = sel.candidates[best];
  sel.calibration = GeoCalibration{c.function,  c.transform,       c.lambda,      c.train_min,
                                   c.train_max, config.idw_power, config.d_min_miles, config.epsilon};
  return sel;
}

double geo_score(const GeoFeatures& g, const GeoCalibration& cal) noexcept {
  const double raw = eval_geo_function(cal.function, g, cal.d_min_miles);
  const double t = apply_transform(cal.transform, cal.lambda, raw, cal.epsilon);
  const double range = cal.train_max - cal.train_min;
  if (!(range > 0.0)) return 0.0;
  const double score = 100.0 * (t - cal.train_min) / range;
  if (std::isnan(score)) return 0.0;
  return std::clamp(score, 0.0, 100.0);
}

std::string format_calibration(const GeoCalibration& cal) {
  std::ostringstream os;
  os << "# stormsift geo calibration v1\n"
     << "function = " << geo_function_name(cal.function) << '\n'
     << "transform = " << transform_name(cal.transform) << '\n'
     << "lambda = " << format_exact(cal.lambda) << '\n'
     << "train_min = " << format_exact(cal.train_min) << '\n'
     << "train_max = " << format_exact(cal.train_max) << '\n'
     << "idw_power = " << format_exact(cal.idw_power) << '\n'
     << "d_min_miles = " << format_exact(cal.d_min_miles) << '\n'
     << "epsilon = " << format_exact(cal.epsilon) << '\n';
  return os.str();
}

GeoCalibration parse_calibration(std::istream& in) {
  GeoCalibration cal;
  bool have_function = false;
  bool have_transform = false;
  bool have_min = false;
  bool have_max = false;
  const auto number = [](const std::string& key, const std::string& v) {
    const auto d = parse_double(v);
    if (!d || !std::isfinite(*d)) throw Error(kStage, "calibration: bad value for " + key);
    return *d;
  };
  for (const auto& [key, value] : parse_key_values(in, kStage)) {
    if (key == "function") {
      const auto f = parse_geo_function(value);
      if (!f) throw Error(kStage, "calibration: unknown function '" + value + "'");
      cal.function = *f;
      have_function = true;
    } else if (key == "transform") {
      const auto t = parse_transform(value);
      if (!t) throw Error(kStage, "calibration: unknown transform '" + value + "'");
      cal.transform = *t;
      have_transform = true;
    } else if (key == "lambda") {
      cal.lambda = number(key, value);
    } else if (key == "train_min") {
      cal.train_min = number(key, value);
      have_min = true;
    } else if (key == "train_max") {
      cal.train_max = number(key, value);
      have_max = true;
    } else if (key == "idw_power") {
      cal.idw_power = number(key, value);
    } else if (key == "d_min_miles") {
      cal.d_min_miles = number(key, value);
    } else if (key == "epsilon") {
      cal.epsilon = number(key, value);
    } else {
      throw Error(kStage, "calibration: unknown key '" + key + "'");
    }
  }
  if (!have_function || !have_transform || !have_min || !have_max) {
    throw Error(kStage, "calibration: missing function, transform, train_min or train_max");
  }
  if (!(cal.train_max > cal.train_min)) throw Error(kStage, "calibration: train_max must exceed train_min");
  return cal;
}

void save_calibration(const std::string& path, const GeoCalibration& calibration) {
  write_file(path, format_calibration(calibration), kStage);
}

GeoCalibration load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(kStage, "cannot open geo calibration " + path);
  return parse_calibration(in);
}

std::string format_selection_report(const GeoModelSelection& sel) {
  std::ostringstream os;
  os << "function,transform,lambda,shapiro_w,mean,stddev,pct_within_1sd,best_f1,best_f1_threshold,"
        "rank,chosen,excluded\n";
  for (std::size_t i = 0; i < sel.candidates.size(); ++i) {
    const auto& c = sel.candidates[i];
    const auto rank_it = std::find(sel.ranking.begin(), sel.ranking.end(), i);
    os << geo_function_name(c.function) << ',' << transform_name(c.transform) << ','
       << format_fixed(c.lambda, 4) << ',' << format_fixed(c.shapiro_w, 4) << ','
       << format_fixed(c.mean, 4) << ',' << format_fixed(c.stddev, 4) << ','
       << format_fixed(c.pct_within_1sd, 4) << ',' << format_fixed(c.best_f1, 4) << ','
       << format_fixed(c.best_f1_threshold, 0) << ','
       << (rank_it == sel.ranking.end() ? std::string() : std::to_string(rank_it - sel.ranking.begin() + 1))
       << ',' << (c.chosen ? "yes" : "no") << ',' << c.excluded.value_or("") << '\n';
  }
  return os.str();
}

}  // namespace stormsift::geo
