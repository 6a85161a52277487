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

#include "stormsift/geo/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "stormsift/common/error.hpp"

namespace stormsift::geo {
namespace {

constexpr const char* kStage = "geo";

std::vector<double> floored(std::span<const double> xs, double epsilon) {
  std::vector<double> out(xs.begin(), xs.end());
  for (double& x : out) x = std::max(x, epsilon);
  return out;
}

bool all_equal(std::span<const double> xs) {
  return std::adjacent_find(xs.begin(), xs.end(), std::not_equal_to<>()) == xs.end();
}

}  // namespace

std::vector<double> transform_minmax(std::span<const double> xs) {
  if (xs.size() < 2) throw Error(kStage, "min-max scaling needs at least two values");
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  const double min = *lo;
  const double range = *hi - *lo;
  if (!(range > 0.0)) throw Error(kStage, "min-max scaling of constant input");
  std::vector<double> out;
  out.reserve(xs.size());
  for (const double x : xs) out.push_back((x - min) / range);
  return out;
}

std::vector<double> transform_log10(std::span<const double> xs, double epsilon) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const double x : xs) out.push_back(std::log10(std::max(x, epsilon)));
  return out;
}

double boxcox(double x, double lambda) noexcept {
  if (std::abs(lambda) < 1e-6) return std::log(x);
  return std::expm1(lambda * std::log(x)) / lambda;
}

double boxcox_log_likelihood(std::span<const double> xs, double lambda) {
  const auto n = static_cast<double>(xs.size());
  double log_sum = 0.0;
  double mean = 0.0;
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (const double x : xs) {
    log_sum += std::log(x);
    ys.push_back(boxcox(x, lambda));
    mean += ys.back();
  }
  mean /= n;
  double var = 0.0;
  for (const double y : ys) var += (y - mean) * (y - mean);
  var /= n;
  return (lambda - 1.0) * log_sum - 0.5 * n * std::log(var);
}

double fit_boxcox_lambda(std::span<const double> xs, double epsilon) {
  if (xs.size() < kBoxCoxMinSamples) {
    throw Error(kStage, "Box-Cox needs at least " + std::to_string(kBoxCoxMinSamples) + " values");
  }
  const auto data = floored(xs, epsilon);
  if (all_equal(data)) throw Error(kStage, "Box-Cox of constant input");

  constexpr double kTolerance = 1e-4;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = kBoxCoxLambdaMin;
  double b = kBoxCoxLambdaMax;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = boxcox_log_likelihood(data, c);
  double fd = boxcox_log_likelihood(data, d);
  while (b - a > kTolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = boxcox_log_likelihood(data, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = boxcox_log_likelihood(data, d);
    }
  }
  return 0.5 * (a + b);
}

BoxCoxFit transform_boxcox(std::span<const double> xs, double epsilon) {
  BoxCoxFit fit;
  fit.lambda = fit_boxcox_lambda(xs, epsilon);
  fit.values = transform_boxcox(xs, fit.lambda, epsilon);
  return fit;
}

std::vector<double> transform_boxcox(std::span<const double> xs, double lambda, double epsilon) {
  if (!std::isfinite(lambda)) throw Error(kStage, "Box-Cox lambda must be finite");
  std::vector<double> out;
  out.reserve(xs.size());
  for (const double x : xs) out.push_back(boxcox(std::max(x, epsilon), lambda));
  return out;
}

}  // namespace stormsift::geo
