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

#include "stormsift/geo/forcing.hpp"

#include "stormsift/common/error.hpp"

namespace stormsift::geo {

ForcingField::ForcingField(std::vector<core::SensorReading> readings,
                           std::vector<core::TrackPoint> track, ForcingConfig config)
    : config_(config) {
  if (!(config_.idw_power > 0.0)) throw Error("geo", "IDW power must be positive");
  for (const auto& r : readings) {
    auto& w = windows_[r.window.index];
    w.wind.push_back({r.location, r.wind_mph});
    w.rain.push_back({r.location, r.precip_inches});
  }
  for (const auto& p : track) track_[p.window.index] = p;
}

bool ForcingField::covers(std::int64_t window_index) const noexcept {
  return windows_.contains(window_index) && track_.contains(window_index);
}

GeoFeatures ForcingField::features_at(const core::GeoLocation& location,
                                      const core::TimeWindow& window) const {
  const auto data = windows_.find(window.index);
  if (data == windows_.end()) {
    throw Error("geo", "no station readings for window " + std::to_string(window.index));
  }
  const auto eye = track_.find(window.index);
  if (eye == track_.end()) throw Error("geo", "no track point for window " + std::to_string(window.index));

  GeoFeatures g;
  g.window = window;
  g.wind_mph = idw_interpolate(location, data->second.wind, config_.idw_power);
  g.rain_inches = data->second.rain.size() < config_.min_precip_stations
                      ? nearest_value(location, data->second.rain)
                      : idw_interpolate(location, data->second.rain, config_.idw_power);
  g.distance_miles = distance_to_eye(location, eye->second.eye, config_.d_min_miles);
  return g;
}

}  // namespace stormsift::geo
