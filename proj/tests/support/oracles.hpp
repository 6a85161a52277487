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

// Independent reference computations used to check library results. None of
// these call into the code paths they check.

#include <cmath>
#include <numbers>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "stormsift/core/types.hpp"
#include "stormsift/geo/interpolation.hpp"

namespace stormsift::testing {

/// Spherical law of cosines distance, then a literal evaluation of
/// sum(W_i / D_i^k) / sum(1 / D_i^k).
inline double idw_oracle(const core::GeoLocation& p, std::span<const geo::StationValue> stations,
                         double k) {
  const double rad = std::numbers::pi / 180.0;
  double num = 0.0;
  double den = 0.0;
  for (const auto& s : stations) {
    const double lat1 = p.latitude() * rad;
    const double lat2 = s.location.latitude() * rad;
    const double dlon = (s.location.longitude() - p.longitude()) * rad;
    // Vincenty's formula stays accurate for short and long arcs alike.
    const double y = std::hypot(std::cos(lat2) * std::sin(dlon),
                                std::cos(lat1) * std::sin(lat2) - std::sin(lat1) * std::cos(lat2) * std::cos(dlon));
    const double x = std::sin(lat1) * std::sin(lat2) + std::cos(lat1) * std::cos(lat2) * std::cos(dlon);
    const double d = 3958.8 * std::atan2(y, x);
    num += s.value / std::pow(d, k);
    den += 1.0 / std::pow(d, k);
  }
  return num / den;
}

// Exhaustive concordance over every (positive, negative) pair.
inline double pairwise_concordance(const std::vector<double>& s, const std::vector<bool>& y) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!y[i]) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j]) continue;
      pairs += 1.0;
      if (s[i] > s[j]) wins += 1.0;
      else if (s[i] == s[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

/// Box-Cox profile log-likelihood maximized by brute force over a lambda
/// grid on [-5, 5].
inline double boxcox_grid_lambda(const std::vector<double>& xs, double step) {
  const auto n = static_cast<double>(xs.size());
  double log_sum = 0.0;
  for (const double x : xs) log_sum += std::log(x);
  double best_lambda = 0.0;
  double best = -INFINITY;
  const int steps = static_cast<int>(std::lround(10.0 / step));
  for (int i = 0; i <= steps; ++i) {
    const double lambda = -5.0 + i * step;
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (const double x : xs) {
      ys.push_back(std::abs(lambda) < 1e-12 ? std::log(x) : (std::pow(x, lambda) - 1.0) / lambda);
    }
    double mean = 0.0;
    for (const double y : ys) mean += y;
    mean /= n;
    double var = 0.0;
    for (const double y : ys) var += (y - mean) * (y - mean);
    var /= n;
    const double ll = (lambda - 1.0) * log_sum - 0.5 * n * std::log(var);
    if (ll > best) {
      best = ll;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

/// Shapiro-Wilk W computed by scipy.stats.shapiro on the reference samples
/// (tests/oracles/shapiro_reference.py).
inline constexpr std::pair<std::string_view, double> kShapiroReference[] = {
    {"normal_20", 0.9649820194},
    {"normal_200", 0.9933733426},
    {"normal_5000", 0.9994351707},
    {"exponential_20", 0.8057235187},
    {"exponential_200", 0.7938836146},
    {"exponential_5000", 0.8117930050},
    {"uniform_20", 0.9456914573},
    {"uniform_200", 0.9582002387},
    {"uniform_5000", 0.9559369863},
    {"lognormal_200", 0.5669370300},
};

}  // namespace stormsift::testing
