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

#include <iosfwd>
#include <string>
#include <vector>

#include "stormsift/core/types.hpp"

namespace stormsift::core {

// Readers for the station, track and label CSV files. A header row matching
// the documented column names is optional. Any schema violation throws
// stormsift::ParseError carrying the 1-based line number.

/// station_id,lat,lon,window_start_iso,wind_mph,precip_in
std::vector<SensorReading> parse_sensor_csv(std::istream& in, UtcSeconds study_start);
std::vector<SensorReading> load_sensor_csv(const std::string& path, UtcSeconds study_start);

/// window_start_iso,lat,lon,category,pressure_mb,max_wind_mph
///
/// Rows must be in window order with exactly one row per hourly window.
std::vector<TrackPoint> parse_track_csv(std::istream& in, UtcSeconds study_start);
std::vector<TrackPoint> load_track_csv(const std::string& path, UtcSeconds study_start);

/// subject_id,rater_id,related,tags  (tags joined with ';')
std::vector<LabelRecord> parse_labels_csv(std::istream& in);
std::vector<LabelRecord> load_labels(const std::string& path);

std::string format_sensor_csv(const std::vector<SensorReading>& readings);
std::string format_track_csv(const std::vector<TrackPoint>& track);
std::string format_labels_csv(const std::vector<LabelRecord>& labels);

}  // namespace stormsift::core
