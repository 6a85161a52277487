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

#include "stormsift/fusion/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/core/time.hpp"

namespace stormsift::fusion {

namespace {

void check_range(double v, const std::string& what) {
  if (!std::isfinite(v) || v < 0.0 || v > 100.0) {
    throw Error("fusion", what + " must be in [0, 100], got " + format_exact(v));
  }
}

}  // namespace

std::string axis_name(Axis axis) {
  switch (axis) {
    case Axis::Geo: return "geo";
    case Axis::Text: return "text";
    case Axis::User: return "user";
    case Axis::Image: return "image";
  }
  return "?";
}

Axis parse_axis(std::string_view name) {
  const std::string n = to_lower(trim(name));
  for (auto a : kAllAxes) {
    if (axis_name(a) == n) return a;
  }
  throw Error("fusion", "unknown axis '" + std::string(name) + "'");
}

double ScoreVector::get(Axis axis) const noexcept {
  switch (axis) {
    case Axis::Geo: return geo;
    case Axis::Text: return text;
    case Axis::User: return user;
    case Axis::Image: return image;
  }
  return 0.0;
}

void ScoreVector::validate() const {
  for (auto a : kAllAxes) check_range(get(a), axis_name(a) + " score");
}

double ThresholdVector::get(Axis axis) const noexcept {
  switch (axis) {
    case Axis::Geo: return geo_min;
    case Axis::Text: return text_min;
    case Axis::User: return user_min;
    case Axis::Image: return image_min;
  }
  return 0.0;
}

void ThresholdVector::set(Axis axis, double value) {
  switch (axis) {
    case Axis::Geo: geo_min = value; break;
    case Axis::Text: text_min = value; break;
    case Axis::User: user_min = value; break;
    case Axis::Image: image_min = value; break;
  }
}

void ThresholdVector::validate() const {
  for (auto a : kAllAxes) check_range(get(a), axis_name(a) + "_min");
}

bool passes_thresholds(const ScoreVector& s, const ThresholdVector& t) noexcept {
  return s.geo >= t.geo_min && s.text >= t.text_min && s.user >= t.user_min && s.image >= t.image_min;
}

std::vector<ScoredTweet> filter_stream(std::span<const ScoredTweet> scored, const ThresholdVector& t) {
  std::vector<ScoredTweet> out;
  for (const auto& s : scored) {
    if (!passes_thresholds(s.scores, t)) continue;
    out.push_back(s);
    out.back().passed = true;
  }
  return out;
}

std::size_t mark_passes(std::span<ScoredTweet> scored, const ThresholdVector& t) {
  std::size_t n = 0;
  for (auto& s : scored) {
    s.passed = passes_thresholds(s.scores, t);
    n += s.passed;
  }
  return n;
}

std::vector<CdfPoint> cdf_pass_rate(std::span<const ScoreVector> scores, Axis axis,
                                    std::span<const double> thresholds) {
  if (scores.empty()) throw Error("fusion", "pass-rate curve needs at least one scored tweet");
  std::vector<double> values;
  values.reserve(scores.size());
  for (const auto& s : scores) values.push_back(s.get(axis));
  std::sort(values.begin(), values.end());
  std::vector<CdfPoint> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto first = std::lower_bound(values.begin(), values.end(), t);
    const auto passing = static_cast<double>(values.end() - first);
    out.push_back({t, passing / static_cast<double>(values.size())});
  }
  return out;
}

std::vector<double> default_cdf_thresholds() {
  std::vector<double> t;
  for (int i = 0; i <= 100; ++i) t.push_back(i);
  return t;
}

void write_cdf_csv(std::ostream& out, std::span<const ScoreVector> scores, std::span<const double> thresholds) {
  std::vector<std::vector<CdfPoint>> curves;
  for (auto a : kAllAxes) curves.push_back(cdf_pass_rate(scores, a, thresholds));
  out << "threshold,geo,text,user,image\n";
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    out << format_exact(thresholds[i]);
    for (const auto& c : curves) out << ',' << format_fixed(c[i].fraction, 6);
    out << '\n';
  }
}

std::string scores_json(const ScoreVector& s) {
  return "{\"geo\":" + format_fixed(s.geo, 2) + ",\"text\":" + format_fixed(s.text, 2) +
         ",\"user\":" + format_fixed(s.user, 2) + ",\"image\":" + format_fixed(s.image, 2) + "}";
}

std::string tags_json(const std::optional<image::TagProbabilities>& tags) {
  if (!tags) return "null";
  return "{\"flooding\":" + format_fixed(tags->flood, 2) + ",\"windy\":" + format_fixed(tags->wind, 2) +
         ",\"destruction\":" + format_fixed(tags->destruction, 2) + "}";
}

void write_scored_ndjson(std::ostream& out, std::span<const ScoredTweet> scored) {
  for (const auto& s : scored) {
    out << "{\"id\":" << nlohmann::json(s.tweet.id).dump()
        << ",\"created_at\":\"" << core::format_iso8601(s.tweet.created_at) << '"'
        << ",\"scores\":" << scores_json(s.scores) << ",\"tags\":" << tags_json(s.tags)
        << ",\"passed\":" << (s.passed ? "true" : "false") << "}\n";
  }
}

}  // namespace stormsift::fusion
