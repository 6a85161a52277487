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

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stormsift/core/types.hpp"
#include "stormsift/image/scorer.hpp"

namespace stormsift::fusion {

enum class Axis { Geo, Text, User, Image };

inline constexpr std::array<Axis, 4> kAllAxes = {Axis::Geo, Axis::Text, Axis::User, Axis::Image};

std::string axis_name(Axis axis);  ///< "geo", "text", "user", "image"
Axis parse_axis(std::string_view name);

struct ScoreVector {
  double geo = 0.0;
  double text = 0.0;
  double user = 0.0;
  double image = 0.0;  ///< 0 when the tweet has no media

  double get(Axis axis) const noexcept;
  /// Throws stormsift::Error unless every component is finite and in [0, 100].
  void validate() const;

  friend bool operator==(const ScoreVector&, const ScoreVector&) = default;
};

struct ThresholdVector {
  double geo_min = 0.0;
  double text_min = 0.0;
  double user_min = 0.0;
  double image_min = 0.0;

  double get(Axis axis) const noexcept;
  void set(Axis axis, double value);
  void validate() const;

  friend bool operator==(const ThresholdVector&, const ThresholdVector&) = default;
};

/// Operating point of 50 geo, 30 text, 85 user, 85 image.
inline constexpr ThresholdVector kRecommendedThresholds{50.0, 30.0, 85.0, 85.0};

struct ScoredTweet {
  core::TweetRecord tweet;
  ScoreVector scores;
  std::optional<image::TagProbabilities> tags;
  bool passed = false;  ///< relative to the thresholds of the last filter
};

/// AND of per-axis "score >= threshold".
bool passes_thresholds(const ScoreVector& s, const ThresholdVector& t) noexcept;

/// Order-preserving passing subset, each copy marked passed.
std::vector<ScoredTweet> filter_stream(std::span<const ScoredTweet> scored, const ThresholdVector& t);

/// Sets `passed` on every tweet; returns how many pass.
std::size_t mark_passes(std::span<ScoredTweet> scored, const ThresholdVector& t);

struct CdfPoint {
  double threshold = 0.0;
  double fraction = 0.0;
};

/// Share of tweets whose score on `axis` alone is >= each threshold. Throws
/// on an empty list.
std::vector<CdfPoint> cdf_pass_rate(std::span<const ScoreVector> scores, Axis axis,
                                    std::span<const double> thresholds);

/// Integers 0..100.
std::vector<double> default_cdf_thresholds();

/// CSV: threshold,geo,text,user,image with fractions to 6 decimals.
void write_cdf_csv(std::ostream& out, std::span<const ScoreVector> scores, std::span<const double> thresholds);

/// JSON object text {"geo":50.00,"text":...} with 2-decimal scores.
std::string scores_json(const ScoreVector& s);
/// JSON object text {"flooding":0.81,"windy":...} or null.
std::string tags_json(const std::optional<image::TagProbabilities>& tags);

/// One JSON record per line: id, created_at, scores, tags, passed.
void write_scored_ndjson(std::ostream& out, std::span<const ScoredTweet> scored);

}  // namespace stormsift::fusion
