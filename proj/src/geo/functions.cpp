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

#include "stormsift/geo/functions.hpp"

#include <algorithm>
#include <cmath>

namespace stormsift::geo {

std::string_view geo_function_name(GeoFunction f) noexcept {
  switch (f) {
    case GeoFunction::WindRainOverDistance: return "wind*rain/d";
    case GeoFunction::RainOverDistance: return "rain/d";
    case GeoFunction::WindOverDistance: return "wind/d";
    case GeoFunction::WindRainOverSqrtDistance: return "wind*rain/sqrt(d)";
    case GeoFunction::RainOverSqrtDistance: return "rain/sqrt(d)";
    case GeoFunction::WindOverSqrtDistance: return "wind/sqrt(d)";
    case GeoFunction::WindRainOverCbrtDistance: return "wind*rain/cbrt(d)";
    case GeoFunction::RainOverCbrtDistance: return "rain/cbrt(d)";
    case GeoFunction::WindOverCbrtDistance: return "wind/cbrt(d)";
  }
  return "?";
}

std::optional<GeoFunction> parse_geo_function(std::string_view name) noexcept {
  for (const auto f : kAllGeoFunctions) {
    if (geo_function_name(f) == name) return f;
  }
  return std::nullopt;
}

double eval_geo_function(GeoFunction f, const GeoFeatures& g, double d_min) noexcept {
  const double d = std::max(g.distance_miles, d_min);
  const double w = g.wind_mph;
  const double r = g.rain_inches;
  switch (f) {
    case GeoFunction::WindRainOverDistance: return w * r / d;
    case GeoFunction::RainOverDistance: return r / d;
    case GeoFunction::WindOverDistance: return w / d;
    case GeoFunction::WindRainOverSqrtDistance: return w * r / std::sqrt(d);
    case GeoFunction::RainOverSqrtDistance: return r / std::sqrt(d);
    case GeoFunction::WindOverSqrtDistance: return w / std::sqrt(d);
    case GeoFunction::WindRainOverCbrtDistance: return w * r / std::cbrt(d);
    case GeoFunction::RainOverCbrtDistance: return r / std::cbrt(d);
    case GeoFunction::WindOverCbrtDistance: return w / std::cbrt(d);
  }
  return 0.0;
}

}  // namespace stormsift::geo
