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

#include "stormsift/core/place.hpp"

#include "stormsift/common/error.hpp"

namespace stormsift::core {

GeoLocation place_centroid(const PlaceGeometry& geometry) {
  if (geometry.vertices.empty()) throw Error("ingest", "place geometry has no vertices");
  double lat = 0.0;
  double lon = 0.0;
  for (const auto& v : geometry.vertices) {
    lat += v.latitude();
    lon += v.longitude();
  }
  const auto n = static_cast<double>(geometry.vertices.size());
  return GeoLocation(lat / n, lon / n);
}

}  // namespace stormsift::core
