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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stormsift/geo/functions.hpp"
#include "stormsift/geo/transforms.hpp"

namespace stormsift::geo {

enum class TransformKind { MinMax, Log10, BoxCox };

inline constexpr TransformKind kAllTransforms[] = {TransformKind::MinMax, TransformKind::Log10,
                                                   TransformKind::BoxCox};

std::string_view transform_name(TransformKind kind) noexcept;
std::optional<TransformKind> parse_transform(std::string_view name) noexcept;

/// Pre-rescale value of a raw function score. MinMax is the identity here
/// because its linear rescale happens in the final 0-100 step anyway.
double apply_transform(TransformKind kind, double lambda, double raw, double epsilon) noexcept;

struct LabeledGeoFeatures {
  GeoFeatures features;
  bool related = false;
};

struct GeoSelectionConfig {
  double epsilon = kDefaultEpsilon;
  double d_min_miles = kDefaultMinDistanceMiles;
  double idw_power = 2.0;  ///< recorded in the calibration only
  std::size_t top_k = 5;
  /// Samples larger than the Shapiro-Wilk limit are subsampled with this seed.
  std::uint64_t seed = 7;
};

/// Statistics for one (function, transform) combination.
struct GeoCandidate {
  GeoFunction function = GeoFunction::WindRainOverDistance;
  TransformKind transform = TransformKind::MinMax;
  double lambda = 1.0;  ///< Box-Cox only
  /// Set when the combination cannot be scored (constant scores, too few
  /// samples); the statistics below are then meaningless.
  std::optional<std::string> excluded;
  double shapiro_w = 0.0;
  /// Moments of the transformed scores after min-max rescaling to [0, 1].
  double mean = 0.0;
  double stddev = 0.0;
  double pct_within_1sd = 0.0;
  double best_f1 = 0.0;
  double best_f1_threshold = 0.0;  ///< on the 0-100 scale
  double train_min = 0.0;          ///< of transformed scores
  double train_max = 0.0;
  bool chosen = false;
};

/// Everything geo_score needs to map a tweet's features onto 0-100.
struct GeoCalibration {
  GeoFunction function = GeoFunction::WindRainOverSqrtDistance;
  TransformKind transform = TransformKind::Log10;
  double lambda = 1.0;
  double train_min = 0.0;
  double train_max = 1.0;
  double idw_power = 2.0;
  double d_min_miles = kDefaultMinDistanceMiles;
  double epsilon = kDefaultEpsilon;
};

struct GeoModelSelection {
  std::vector<GeoCandidate> candidates;  ///< declaration order: function-major
  std::vector<std::size_t> ranking;      ///< indices of non-excluded candidates, best W first
  std::size_t chosen = 0;                ///< index into candidates
  GeoCalibration calibration;

  const GeoCandidate& chosen_candidate() const { return candidates.at(chosen); }
};

/// Scores every (function, transform) pair, ranks by Shapiro-Wilk W (ties:
/// |mean - 0.5|, then declaration order) and, among the top `top_k`, picks
/// the candidate whose rescaled mean is closest to 0.5. Throws
/// stormsift::Error on empty input or when every candidate is excluded.
GeoModelSelection select_geo_model(std::span<const LabeledGeoFeatures> samples,
                                   const GeoSelectionConfig& config = {});

/// 0-100 geospatial relevance score, clamped.
double geo_score(const GeoFeatures& g, const GeoCalibration& calibration) noexcept;

std::string format_calibration(const GeoCalibration& calibration);
GeoCalibration parse_calibration(std::istream& in);
void save_calibration(const std::string& path, const GeoCalibration& calibration);
GeoCalibration load_calibration(const std::string& path);

/// Tab-free CSV of all candidates and their statistics.
std::string format_selection_report(const GeoModelSelection& selection);

}  // namespace stormsift::geo
