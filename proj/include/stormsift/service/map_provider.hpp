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

#include <optional>
#include <string>

namespace stormsift::service {

struct MapContext {
  std::string address;
  std::string tile;
  std::optional<std::string> street_view;

  friend bool operator==(const MapContext&, const MapContext&) = default;
};

class MapProvider {
 public:
  virtual ~MapProvider() = default;

  /// Throws stormsift::Error("map", ...) for an invalid coordinate.
  virtual MapContext context(double latitude, double longitude) const = 0;
};

/// Offline provider: the address is "lat,lon @ cell(floor lat,floor lon)"
/// and the tile is a path under `tile_root`.
class MockMapProvider : public MapProvider {
 public:
  explicit MockMapProvider(std::string tile_root = "tiles") : tile_root_(std::move(tile_root)) {}

  MapContext context(double latitude, double longitude) const override;

 private:
  std::string tile_root_;
};

MapContext map_context(double latitude, double longitude, const MapProvider& provider);

/// Shortest round-trip decimal, always with a fractional part ("26.0").
std::string format_coordinate(double value);

}  // namespace stormsift::service
