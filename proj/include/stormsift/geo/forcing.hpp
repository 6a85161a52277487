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
#include <map>
#include <vector>

#include "stormsift/core/types.hpp"
#include "stormsift/geo/functions.hpp"

namespace stormsift::geo {

struct ForcingConfig {
  double idw_power = 2.0;
  double d_min_miles = kDefaultMinDistanceMiles;
  /// Below this many reporting stations in a window, rain falls back to the
  /// nearest station instead of IDW.
  std::size_t min_precip_stations = 3;
};

/// Hourly station and track data indexed by window, answering "what were
/// the forcing conditions here, at this hour?".
class ForcingField {
 public:
  ForcingField(std::vector<core::SensorReading> readings, std::vector<core::TrackPoint> track,
               ForcingConfig config = {});

  /// Throws stormsift::Error when the window has no station readings or no
  /// track point.
  GeoFeatures features_at(const core::GeoLocation& location, const core::TimeWindow& window) const;

  bool covers(std::int64_t window_index) const noexcept;

  const ForcingConfig& config() const noexcept { return config_; }

 private:
  struct WindowData {
    std::vector<StationValue> wind;
    std::vector<StationValue> rain;
  };

  ForcingConfig config_;
  std::map<std::int64_t, WindowData> windows_;
  std::map<std::int64_t, core::TrackPoint> track_;
};

}  // namespace stormsift::geo
