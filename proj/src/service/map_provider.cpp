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


#include "stormsift/service/map_provider.hpp"

#include <cmath>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/core/types.hpp"

namespace stormsift::service {

std::string format_coordinate(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::string s = format_exact(value);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

MapContext MockMapProvider::context(double latitude, double longitude) const {
  if (!core::GeoLocation::is_valid(latitude, longitude)) {
    throw Error("map", "invalid location " + format_exact(latitude) + "," + format_exact(longitude));
  }
  const auto cell_lat = static_cast<long long>(std::floor(latitude));
  const auto cell_lon = static_cast<long long>(std::floor(longitude));
  const std::string coords = format_coordinate(latitude) + "," + format_coordinate(longitude);
  const std::string cell = std::to_string(cell_lat) + "," + std::to_string(cell_lon);
  MapContext out;
  out.address = coords + " @ cell(" + cell + ")";
  out.tile = tile_root_ + "/cell_" + std::to_string(cell_lat) + "_" + std::to_string(cell_lon) + ".png";
  out.street_view = "mock://streetview/" + coords;
  return out;
}

MapContext map_context(double latitude, double longitude, const MapProvider& provider) {
  return provider.context(latitude, longitude);
}

}  // namespace stormsift::service
