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
#include <optional>
#include <string>
#include <vector>

namespace stormsift::core {

/// Seconds since the Unix epoch, always UTC.
using UtcSeconds = std::int64_t;

inline constexpr std::int64_t kSecondsPerHour = 3600;
inline constexpr std::int64_t kSecondsPerDay = 86400;

/// Validated latitude/longitude pair in degrees.
class GeoLocation {
 public:
  GeoLocation() = default;

  /// Throws stormsift::Error when either coordinate is non-finite or out of range.
  GeoLocation(double latitude, double longitude);

  static bool is_valid(double latitude, double longitude) noexcept;

  double latitude() const noexcept { return latitude_; }
  double longitude() const noexcept { return longitude_; }

  friend bool operator==(const GeoLocation&, const GeoLocation&) = default;

 private:
  double latitude_ = 0.0;
  double longitude_ = 0.0;
};

/// A Place polygon (>= 3 vertices) or a bounding box given as its
/// south-west and north-east corners (exactly 2 vertices).
struct PlaceGeometry {
  std::vector<GeoLocation> vertices;

  bool is_bounding_box() const noexcept { return vertices.size() == 2; }

  /// Throws when empty, a 1-vertex shape, or a box with corners out of order.
  void validate() const;

  friend bool operator==(const PlaceGeometry&, const PlaceGeometry&) = default;
};

struct TimeWindow {
  std::int64_t index = 0;  ///< whole hours since study start
  UtcSeconds start = 0;

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

struct StudyWindow {
  UtcSeconds start = 0;
  UtcSeconds end = 0;  ///< inclusive

  bool contains(UtcSeconds t) const noexcept { return t >= start && t <= end; }
};

enum class LocationKind { Coordinates, PlaceCentroid };

struct MediaRef {
  std::string media_id;
  std::string path;

  friend bool operator==(const MediaRef&, const MediaRef&) = default;
};

struct UserProfile {
  std::string user_id;
  UtcSeconds account_created_at = 0;
  std::int64_t friends_count = 0;
  std::int64_t followers_count = 0;
  std::int64_t statuses_count = 0;
  bool verified = false;

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

struct TweetRecord {
  std::string id;
  UtcSeconds created_at = 0;
  GeoLocation location;
  LocationKind location_kind = LocationKind::Coordinates;
  /// Source geometry when the location is a Place centroid.
  std::optional<PlaceGeometry> place;
  std::string text;
  std::vector<std::string> hashtags;
  std::vector<std::string> weblinks;
  std::vector<MediaRef> media;
  UserProfile author;

  friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

struct SensorReading {
  std::string station_id;
  GeoLocation location;
  TimeWindow window;
  double wind_mph = 0.0;
  double precip_inches = 0.0;
};

struct TrackPoint {
  TimeWindow window;
  GeoLocation eye;
  int category = 0;
  double pressure_mb = 0.0;
  double max_wind_mph = 0.0;
};

enum class Tag : std::uint8_t { Flooding, Windy, Destruction };

inline constexpr Tag kAllTags[] = {Tag::Flooding, Tag::Windy, Tag::Destruction};

const char* tag_name(Tag tag) noexcept;
std::optional<Tag> parse_tag(std::string_view name);

struct LabelRecord {
  std::string subject_id;
  std::string rater_id;
  bool related = false;
  std::vector<Tag> tags;

  bool has_tag(Tag tag) const noexcept;
};

}  // namespace stormsift::core
