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

#include "stormsift/geo/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "stormsift/common/error.hpp"

namespace stormsift::geo {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

double great_circle_miles(const core::GeoLocation& a, const core::GeoLocation& b) noexcept {
  const double lat1 = a.latitude() * kDegToRad;
  const double lat2 = b.latitude() * kDegToRad;
  const double dlat = lat2 - lat1;
  const double dlon = (b.longitude() - a.longitude()) * kDegToRad;
  const double s_lat = std::sin(dlat / 2.0);
  const double s_lon = std::sin(dlon / 2.0);
  double h = s_lat * s_lat + std::cos(lat1) * std::cos(lat2) * s_lon * s_lon;
  h = std::min(1.0, std::max(0.0, h));
  return 2.0 * kEarthRadiusMiles * std::asin(std::sqrt(h));
}

double distance_to_eye(const core::GeoLocation& p, const core::GeoLocation& eye,
                       double d_min) noexcept {
  return std::max(great_circle_miles(p, eye), d_min);
}

double idw_interpolate(const core::GeoLocation& p, std::span<const StationValue> stations,
                       double power) {
  if (stations.empty()) throw Error("geo", "IDW needs at least one station");
  if (!(power > 0.0) || !std::isfinite(power)) throw Error("geo", "IDW power must be positive");

  // Relative weights are computed against the nearest station so that large
  // powers cannot underflow every weight to zero.
  double nearest = great_circle_miles(p, stations[0].location);
  std::size_t nearest_index = 0;
  std::vector<double> distances(stations.size());
  for (std::size_t i = 0; i < stations.size(); ++i) {
    distances[i] = great_circle_miles(p, stations[i].location);
    if (distances[i] < nearest) {
      nearest = distances[i];
      nearest_index = i;
    }
  }
  if (nearest < kSnapMiles) return stations[nearest_index].value;

  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const double w = std::pow(nearest / distances[i], power);
    numerator += w * stations[i].value;
    denominator += w;
  }
  return numerator / denominator;
}

double nearest_value(const core::GeoLocation& p, std::span<const StationValue> stations) {
  if (stations.empty()) throw Error("geo", "no stations to choose from");
  std::size_t best = 0;
  double best_d = great_circle_miles(p, stations[0].location);
  for (std::size_t i = 1; i < stations.size(); ++i) {
    const double d = great_circle_miles(p, stations[i].location);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return stations[best].value;
}

}  // namespace stormsift::geo
