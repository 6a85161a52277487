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
#include <numbers>
#include <sstream>

#include "stormsift/common/error.hpp"
#include "stormsift/common/random.hpp"
#include "stormsift/core/time.hpp"
#include "stormsift/geo/forcing.hpp"
#include "stormsift/geo/model_selection.hpp"
#include "stormsift/geo/shapiro_wilk.hpp"
#include "support/oracles.hpp"
#include "support/samples.hpp"
#include "support/storm.hpp"

using namespace stormsift;
using namespace stormsift::geo;
using core::GeoLocation;

namespace {

/// Point `miles` due north of `origin` along the meridian.
GeoLocation north_of(const GeoLocation& origin, double miles) {
  return GeoLocation(origin.latitude() + miles / kEarthRadiusMiles * 180.0 / std::numbers::pi,
                     origin.longitude());
}

GeoFeatures features(double w, double r, double d) {
  GeoFeatures g;
  g.wind_mph = w;
  g.rain_inches = r;
  g.distance_miles = d;
  return g;
}

}  // namespace

TEST_CASE("distance to eye") {
  const GeoLocation eye(25.0, -80.0);
  CHECK(distance_to_eye(eye, eye) == 1.0);

  // Haversine on the equator reduces to R * delta_lon.
  const double expected = kEarthRadiusMiles * std::numbers::pi / 180.0;
  const double d = great_circle_miles(GeoLocation(0, 10), GeoLocation(0, 11));
  CHECK(std::abs(d - 69.09) <= 0.5);
  CHECK(d == doctest::Approx(expected).epsilon(1e-12));

  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const GeoLocation a(rng.uniform(-89, 89), rng.uniform(-179, 179));
    const GeoLocation b(rng.uniform(-89, 89), rng.uniform(-179, 179));
    CHECK(great_circle_miles(a, b) == great_circle_miles(b, a));
  }
}

TEST_CASE("idw examples") {
  const GeoLocation p(27.0, -81.0);
  const std::vector<StationValue> one{{GeoLocation(30, -85), 12.0}};
  CHECK(idw_interpolate(p, one, 2.0) == 12.0);

  const std::vector<StationValue> two{{north_of(p, 10), 10.0}, {north_of(p, -10), 20.0}};
  CHECK(idw_interpolate(p, two, 1.0) == doctest::Approx(15.0).epsilon(1e-9));

  // D = 1, 2, 4 miles, k = 2: (10/1 + 20/4 + 40/16) / (1 + 1/4 + 1/16) = 40/3.
  const std::vector<StationValue> three{
      {north_of(p, 1), 10.0}, {north_of(p, 2), 20.0}, {north_of(p, 4), 40.0}};
  CHECK(std::abs(idw_interpolate(p, three, 2.0) - 40.0 / 3.0) <= 1e-9);
  CHECK(std::abs(idw_interpolate(p, three, 2.0) - testing::idw_oracle(p, three, 2.0)) <= 1e-9);

  const std::vector<StationValue> snap{{p, 7.0}, {north_of(p, 3), 100.0}};
  CHECK(idw_interpolate(p, snap, 2.0) == 7.0);

  CHECK_THROWS_AS(idw_interpolate(p, std::vector<StationValue>{}, 2.0), Error);
  CHECK_THROWS_AS(idw_interpolate(p, one, 0.0), Error);
}

TEST_CASE("idw is bounded and approaches nearest neighbour for large powers") {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const GeoLocation p(rng.uniform(24, 31), rng.uniform(-87, -80));
    std::vector<StationValue> stations;
    const std::size_t n = 1 + rng.below(5);
    for (std::size_t i = 0; i < n; ++i) {
      stations.push_back({GeoLocation(rng.uniform(24, 31), rng.uniform(-87, -80)), rng.uniform(0, 120)});
    }
    const auto [lo, hi] = std::minmax_element(stations.begin(), stations.end(),
                                              [](auto& a, auto& b) { return a.value < b.value; });
    const double k = rng.uniform(0.1, 6.0);
    const double v = idw_interpolate(p, stations, k);
    CHECK(v >= lo->value - 1e-9);
    CHECK(v <= hi->value + 1e-9);

    const double nearest = nearest_value(p, stations);
    const double far = idw_interpolate(p, stations, 50.0);
    // Random station layouts almost never produce near-equal distances; when
    // they do the gap between the two nearest values bounds the error.
    std::vector<double> d;
    for (const auto& s : stations) d.push_back(great_circle_miles(p, s.location));
    std::sort(d.begin(), d.end());
    if (d.size() == 1 || d[1] / d[0] > 1.2) CHECK(far == doctest::Approx(nearest).epsilon(1e-3));
  }
}

TEST_CASE("geo function arithmetic") {
  CHECK(eval_geo_function(GeoFunction::WindRainOverSqrtDistance, features(10, 2, 4)) == 10.0);
  CHECK(eval_geo_function(GeoFunction::WindOverDistance, features(30, 0, 1)) == 30.0);
  CHECK(eval_geo_function(GeoFunction::WindOverDistance, features(30, 0, 0.2)) == 30.0);  // clamped
  CHECK(eval_geo_function(GeoFunction::RainOverCbrtDistance, features(0, 8, 27)) ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  for (const auto f : kAllGeoFunctions) CHECK(parse_geo_function(geo_function_name(f)) == f);
}

TEST_CASE("every geo function is monotone in wind, rain and distance") {
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const double w = rng.uniform(0, 150);
    const double r = rng.uniform(0, 5);
    const double d = rng.uniform(0, 500);
    const double dw = rng.uniform(0, 20);
    const double dr = rng.uniform(0, 1);
    const double dd = rng.uniform(0, 50);
    for (const auto f : kAllGeoFunctions) {
      const double base = eval_geo_function(f, features(w, r, d));
      CHECK(eval_geo_function(f, features(w + dw, r, d)) >= base);
      CHECK(eval_geo_function(f, features(w, r + dr, d)) >= base);
      CHECK(eval_geo_function(f, features(w, r, d + dd)) <= base);
    }
  }
}

TEST_CASE("min-max transform") {
  CHECK(transform_minmax(std::vector<double>{0, 5, 10}) == std::vector<double>{0, 0.5, 1});
  CHECK_THROWS_AS(transform_minmax(std::vector<double>{3, 3, 3}), Error);
  CHECK_THROWS_AS(transform_minmax(std::vector<double>{3}), Error);
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs;
    for (int i = 0; i < 20; ++i) xs.push_back(rng.normal(5, 10));
    const auto ys = transform_minmax(xs);
    const auto lo = std::min_element(xs.begin(), xs.end()) - xs.begin();
    const auto hi = std::max_element(xs.begin(), xs.end()) - xs.begin();
    CHECK(ys[lo] == 0.0);
    CHECK(ys[hi] == 1.0);
  }
}

TEST_CASE("log10 transform") {
  const auto ys = transform_log10(std::vector<double>{1, 10, 100});
  CHECK(ys[0] == 0.0);
  CHECK(ys[1] == 1.0);
  CHECK(ys[2] == 2.0);
  CHECK(transform_log10(std::vector<double>{0})[0] == doctest::Approx(-6.0).epsilon(1e-15));
  Rng rng(3);
  std::vector<double> xs;
  for (int i = 0; i < 200; ++i) xs.push_back(rng.exponential());
  const auto ls = transform_log10(xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (xs[i] < xs[j]) CHECK(ls[i] <= ls[j]);
    }
  }
}

TEST_CASE("box-cox with an imposed lambda follows the closed form") {
  const std::vector<double> xs{0.5, 1.0, 2.0, 7.5, 40.0};
  const auto ones = transform_boxcox(xs, 1.0, kDefaultEpsilon);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(ones[i] == doctest::Approx(xs[i] - 1.0).epsilon(1e-14));

  for (const double lambda : {-2.0, -0.5, 0.5, 2.5}) {
    const auto ys = transform_boxcox(xs, lambda, kDefaultEpsilon);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(ys[i] == doctest::Approx((std::pow(xs[i], lambda) - 1.0) / lambda).epsilon(1e-12));
      // (x^l - 1)/l is increasing in x for every l != 0.
      if (i > 0) CHECK(ys[i] > ys[i - 1]);
    }
  }
  const auto logs = transform_boxcox(xs, 0.0, kDefaultEpsilon);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(logs[i] == std::log(xs[i]));
}

TEST_CASE("box-cox lambda recovery against a profile-likelihood grid") {
  SUBCASE("log-normal data") {
    const auto xs = testing::draw(testing::SampleFamily::LogNormal, 5000, 42);
    const double lambda = fit_boxcox_lambda(xs);
    const double grid = testing::boxcox_grid_lambda(xs, 0.01);
    CHECK(std::abs(lambda) <= 0.15);
    CHECK(std::abs(lambda - grid) <= 0.01);
  }
  SUBCASE("already normal data") {
    auto xs = testing::draw(testing::SampleFamily::Normal, 5000, 43);
    for (double& x : xs) x = 10.0 + x;
    const double lambda = fit_boxcox_lambda(xs);
    const double grid = testing::boxcox_grid_lambda(xs, 0.01);
    CHECK(lambda >= 0.5);
    CHECK(lambda <= 1.5);
    CHECK(std::abs(lambda - grid) <= 0.01);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(fit_boxcox_lambda(std::vector<double>(30, 2.0)), Error);
    CHECK_THROWS_AS(fit_boxcox_lambda(std::vector<double>(10, 2.0)), Error);
  }
}

TEST_CASE("shapiro-wilk against frozen reference values") {
  for (const auto& [name, expected] : testing::kShapiroReference) {
    const auto it = std::find_if(testing::reference_samples().begin(), testing::reference_samples().end(),
                                 [&](const auto& s) { return s.name == name; });
    REQUIRE(it != testing::reference_samples().end());
    const auto xs = testing::draw(*it);
    CAPTURE(name);
    CHECK(std::abs(shapiro_wilk(xs).w - expected) <= 1e-3);
  }
}

TEST_CASE("shapiro-wilk properties") {
  const auto normal = testing::draw(testing::SampleFamily::Normal, 5000, 1);
  const auto expo = testing::draw(testing::SampleFamily::Exponential, 5000, 1);
  CHECK(shapiro_wilk(normal).w > 0.995);
  CHECK(shapiro_wilk(expo).w < 0.92);
  CHECK(shapiro_wilk(normal).p_value > 0.01);
  CHECK(shapiro_wilk(expo).p_value < 1e-10);

  const auto small = testing::draw(testing::SampleFamily::Uniform, 37, 5);
  std::vector<double> affine;
  for (const double x : small) affine.push_back(3.5 * x - 12.0);
  CHECK(shapiro_wilk(affine).w == doctest::Approx(shapiro_wilk(small).w).epsilon(1e-12));

  const std::vector<double> three{1.0, 2.0, 4.0};
  CHECK(shapiro_wilk(three).w > 0.0);
  CHECK(shapiro_wilk(three).w <= 1.0);

  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{1, 2}), Error);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>(5001, 1.0)), Error);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>(10, 1.0)), Error);
}

TEST_CASE("normal quantile") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
  CHECK(normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-13));
  CHECK(normal_quantile(0.3) == doctest::Approx(-normal_quantile(0.7)).epsilon(1e-15));
}

TEST_CASE("model selection on a synthetic storm prefers log or box-cox") {
  const auto samples = testing::synthetic_storm(3000, 99);
  const auto sel = select_geo_model(samples);
  REQUIRE(sel.candidates.size() == 27);
  CHECK(std::count_if(sel.candidates.begin(), sel.candidates.end(), [](auto& c) { return c.chosen; }) == 1);

  double best_minmax = 0.0;
  double best_other = 0.0;
  for (const auto& c : sel.candidates) {
    if (c.excluded) continue;
    (c.transform == TransformKind::MinMax ? best_minmax : best_other) =
        std::max(c.transform == TransformKind::MinMax ? best_minmax : best_other, c.shapiro_w);
  }
  CHECK(best_other > best_minmax);
  for (std::size_t r = 0; r < 5; ++r) {
    CHECK(sel.candidates[sel.ranking[r]].transform != TransformKind::MinMax);
  }
  const auto& chosen = sel.chosen_candidate();
  CHECK(chosen.transform != TransformKind::MinMax);
  CHECK(sel.calibration.function == chosen.function);
  CHECK(chosen.pct_within_1sd > 0.5);
  CHECK(chosen.best_f1 > 0.0);

  // Determinism.
  const auto again = select_geo_model(samples);
  CHECK(again.chosen == sel.chosen);
  CHECK(again.ranking == sel.ranking);
  CHECK(format_selection_report(again) == format_selection_report(sel));
}

TEST_CASE("model selection tie rule and exclusions") {
  // Wind is constant, so every wind-only function is a monotone function of
  // distance alone; rain is zero everywhere, so rain and wind*rain functions
  // are constant and must be excluded.
  std::vector<LabeledGeoFeatures> samples;
  Rng rng(5);
  for (int i = 0; i < 60; ++i) {
    LabeledGeoFeatures s;
    s.features = features(20.0, 0.0, rng.uniform(2, 300));
    s.related = i % 2 == 0;
    samples.push_back(s);
  }
  const auto sel = select_geo_model(samples);
  for (const auto& c : sel.candidates) {
    const bool uses_rain = c.function != GeoFunction::WindOverDistance &&
                           c.function != GeoFunction::WindOverSqrtDistance &&
                           c.function != GeoFunction::WindOverCbrtDistance;
    CHECK(c.excluded.has_value() == uses_rain);
  }
  // Log10 of w/d, w/sqrt(d) and w/cbrt(d) are affine in log d, so their W
  // are equal up to rounding; ranking order among exact ties is by
  // |mean - 0.5| then declaration order.
  for (std::size_t r = 1; r < sel.ranking.size(); ++r) {
    const auto& a = sel.candidates[sel.ranking[r - 1]];
    const auto& b = sel.candidates[sel.ranking[r]];
    CHECK(a.shapiro_w >= b.shapiro_w);
    if (a.shapiro_w == b.shapiro_w) {
      const double ga = std::abs(a.mean - 0.5);
      const double gb = std::abs(b.mean - 0.5);
      CHECK(ga <= gb);
      if (ga == gb) CHECK(sel.ranking[r - 1] < sel.ranking[r]);
    }
  }
  CHECK_THROWS_AS(select_geo_model(std::vector<LabeledGeoFeatures>{}), Error);
}

TEST_CASE("geo_score maps the training range onto 0-100 and clamps") {
  const auto samples = testing::synthetic_storm(500, 7);
  const auto sel = select_geo_model(samples);
  const auto& cal = sel.calibration;
  double lo = 1e300;
  double hi = -1e300;
  std::size_t lo_i = 0;
  std::size_t hi_i = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double s = geo_score(samples[i].features, cal);
    CHECK(s >= 0.0);
    CHECK(s <= 100.0);
    if (s < lo) { lo = s; lo_i = i; }
    if (s > hi) { hi = s; hi_i = i; }
  }
  CHECK(geo_score(samples[lo_i].features, cal) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(geo_score(samples[hi_i].features, cal) == doctest::Approx(100.0).epsilon(1e-9));
  CHECK(geo_score(features(500, 50, 1), cal) == 100.0);
  CHECK(geo_score(features(0, 0, 1000), cal) == 0.0);
}

TEST_CASE("calibration text round-trips") {
  GeoCalibration cal{GeoFunction::WindRainOverSqrtDistance, TransformKind::BoxCox, -0.123456789, -3.5, 2.25, 2.0, 1.0, 1e-6};
  std::istringstream in(format_calibration(cal));
  const auto back = parse_calibration(in);
  CHECK(back.function == cal.function);
  CHECK(back.transform == cal.transform);
  CHECK(back.lambda == cal.lambda);
  CHECK(back.train_min == cal.train_min);
  CHECK(back.train_max == cal.train_max);
  std::istringstream missing("function = wind/d\n");
  CHECK_THROWS_AS(parse_calibration(missing), Error);
  std::istringstream bad("function = wind/x\ntransform = log10\ntrain_min = 0\ntrain_max = 1\n");
  CHECK_THROWS_AS(parse_calibration(bad), Error);
}

TEST_CASE("forcing field interpolates station data for the tweet's hour") {
  const auto start = core::parse_iso8601("2017-09-10T00:00:00Z");
  const auto w0 = core::window_at(0, start);
  const GeoLocation a(26.0, -81.0);
  std::vector<core::SensorReading> readings{
      {"A", a, w0, 40.0, 2.0},
      {"B", GeoLocation(27.0, -81.0), w0, 20.0, 0.5},
  };
  std::vector<core::TrackPoint> track{{w0, GeoLocation(25.0, -81.0), 4, 930, 130}};
  ForcingField field(readings, track);
  const auto g = field.features_at(a, w0);
  CHECK(g.wind_mph == 40.0);
  CHECK(g.rain_inches == 2.0);  // nearest station: only two report
  CHECK(g.distance_miles == doctest::Approx(kEarthRadiusMiles * std::numbers::pi / 180.0).epsilon(1e-9));
  CHECK(field.covers(0));
  CHECK_FALSE(field.covers(1));
  CHECK_THROWS_AS(field.features_at(a, core::window_at(1, start)), Error);

  const GeoLocation mid(26.5, -81.0);
  const auto gm = field.features_at(mid, w0);
  CHECK(gm.wind_mph > 20.0);
  CHECK(gm.wind_mph < 40.0);
}
