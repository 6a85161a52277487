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

namespace stormsift::geo {

struct ShapiroWilk {
  double w = 1.0;        ///< statistic in (0, 1]; larger is closer to normal
  double p_value = 1.0;
};

inline constexpr std::size_t kShapiroWilkMinN = 3;
inline constexpr std::size_t kShapiroWilkMaxN = 5000;

/// Shapiro-Wilk W via Royston's AS R94 approximation of the coefficients.
/// The input need not be sorted. Throws stormsift::Error for n outside
/// [3, 5000] or zero-range data.
ShapiroWilk shapiro_wilk(std::span<const double> xs);

/// Standard normal quantile (Wichura AS 241, ~1e-16 relative accuracy).
double normal_quantile(double p);

}  // namespace stormsift::geo
