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

#include <span>

#include "stormsift/core/types.hpp"

namespace stormsift::geo {

inline constexpr double kEarthRadiusMiles = 3958.8;
inline constexpr double kDefaultMinDistanceMiles = 1.0;

/// Haversine great-circle distance in statute miles.
double great_circle_miles(const core::GeoLocation& a, const core::GeoLocation& b) noexcept;

/// Distance from a point to the hurricane eye, clamped below at `d_min`.
double distance_to_eye(const core::GeoLocation& p, const core::GeoLocation& eye,
                       double d_min = kDefaultMinDistanceMiles) noexcept;

struct StationValue {
  core::GeoLocation location;
  double value = 0.0;
};

/// Stations closer than this are treated as co-located with the query point.
inline constexpr double kSnapMiles = 1e-6;

/// Inverse distance weighting:
///
///   W_p = sum(W_i / D_i^k) / sum(1 / D_i^k)
///
/// with D_i the great-circle distance in miles. A station within kSnapMiles
/// of `p` returns its value exactly. Throws stormsift::Error when `stations`
/// is empty or `power` is not positive.
double idw_interpolate(const core::GeoLocation& p, std::span<const StationValue> stations,
                       double power = 2.0);

/// Value of the closest station; first one wins on equal distance.
double nearest_value(const core::GeoLocation& p, std::span<const StationValue> stations);

}  // namespace stormsift::geo
