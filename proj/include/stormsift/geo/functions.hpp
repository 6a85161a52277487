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
#include <optional>
#include <string_view>

#include "stormsift/core/types.hpp"
#include "stormsift/geo/interpolation.hpp"

namespace stormsift::geo {

/// Forcing conditions at a tweet's place and hour.
struct GeoFeatures {
  double wind_mph = 0.0;
  double rain_inches = 0.0;
  double distance_miles = kDefaultMinDistanceMiles;  ///< to the eye, already clamped
  core::TimeWindow window;
};

/// The nine candidate relevance functions: a forcing numerator (wind*rain,
/// rain or wind) over a distance denominator (d, sqrt d or cbrt d).
enum class GeoFunction {
  WindRainOverDistance,
  RainOverDistance,
  WindOverDistance,
  WindRainOverSqrtDistance,
  RainOverSqrtDistance,
  WindOverSqrtDistance,
  WindRainOverCbrtDistance,
  RainOverCbrtDistance,
  WindOverCbrtDistance,
};

inline constexpr std::array<GeoFunction, 9> kAllGeoFunctions = {
    GeoFunction::WindRainOverDistance,     GeoFunction::RainOverDistance,
    GeoFunction::WindOverDistance,         GeoFunction::WindRainOverSqrtDistance,
    GeoFunction::RainOverSqrtDistance,     GeoFunction::WindOverSqrtDistance,
    GeoFunction::WindRainOverCbrtDistance, GeoFunction::RainOverCbrtDistance,
    GeoFunction::WindOverCbrtDistance,
};

std::string_view geo_function_name(GeoFunction f) noexcept;
std::optional<GeoFunction> parse_geo_function(std::string_view name) noexcept;

/// Raw (untransformed) score. The distance is clamped to `d_min` first.
double eval_geo_function(GeoFunction f, const GeoFeatures& g,
                         double d_min = kDefaultMinDistanceMiles) noexcept;

}  // namespace stormsift::geo
