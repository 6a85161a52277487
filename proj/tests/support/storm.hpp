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

#include <algorithm>
#include <cmath>
#include <vector>

#include "stormsift/common/random.hpp"
#include "stormsift/geo/model_selection.hpp"

namespace stormsift::testing {

inline std::vector<geo::LabeledGeoFeatures> synthetic_storm(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<geo::LabeledGeoFeatures> out;
  for (std::size_t i = 0; i < n; ++i) {
    geo::LabeledGeoFeatures s;
    // Wind and rain each log-normal so wind*rain spans about four decades.
    s.features.wind_mph = rng.lognormal(3.0, 0.9);
    s.features.rain_inches = rng.lognormal(-1.5, 1.2);
    s.features.distance_miles = std::max(1.0, rng.lognormal(4.5, 0.8));
    const double severity = std::log(s.features.wind_mph * s.features.rain_inches /
                                     std::sqrt(s.features.distance_miles));
    s.related = rng.uniform() < 1.0 / (1.0 + std::exp(-(severity - 0.5)));
    out.push_back(s);
  }
  return out;
}

}  // namespace stormsift::testing
