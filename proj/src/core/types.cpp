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

#include "stormsift/core/types.hpp"

#include <cmath>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"

namespace stormsift::core {

GeoLocation::GeoLocation(double latitude, double longitude)
    : latitude_(latitude), longitude_(longitude) {
  if (!is_valid(latitude, longitude)) {
    throw Error("ingest", "invalid location (" + format_exact(latitude) + ", " +
                              format_exact(longitude) + ")");
  }
}

bool GeoLocation::is_valid(double latitude, double longitude) noexcept {
  return std::isfinite(latitude) && std::isfinite(longitude) && latitude >= -90.0 &&
         latitude <= 90.0 && longitude >= -180.0 && longitude <= 180.0;
}

void PlaceGeometry::validate() const {
  if (vertices.empty()) throw Error("ingest", "place geometry has no vertices");
  if (vertices.size() == 1) throw Error("ingest", "place geometry has a single vertex");
  if (is_bounding_box()) {
    const auto& sw = vertices[0];
    const auto& ne = vertices[1];
    if (sw.latitude() > ne.latitude() || sw.longitude() > ne.longitude()) {
      throw Error("ingest", "bounding box corners must be south-west then north-east");
    }
  }
}

const char* tag_name(Tag tag) noexcept {
  switch (tag) {
    case Tag::Flooding: return "Flooding";
    case Tag::Windy: return "Windy";
    case Tag::Destruction: return "Destruction";
  }
  return "?";
}

std::optional<Tag> parse_tag(std::string_view name) {
  const std::string lower = to_lower(trim(name));
  if (lower == "flooding" || lower == "flood") return Tag::Flooding;
  if (lower == "windy" || lower == "wind") return Tag::Windy;
  if (lower == "destruction") return Tag::Destruction;
  return std::nullopt;
}

bool LabelRecord::has_tag(Tag tag) const noexcept {
  for (const Tag t : tags) {
    if (t == tag) return true;
  }
  return false;
}

}  // namespace stormsift::core
