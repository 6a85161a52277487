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
#include <vector>

namespace stormsift::geo {

/// Floor applied before log10 / Box-Cox so calm or dry windows (score 0)
/// stay in the domain.
inline constexpr double kDefaultEpsilon = 1e-6;

/// (x - min) / (max - min). Throws on fewer than two values or constant input.
std::vector<double> transform_minmax(std::span<const double> xs);

/// log10(max(x, epsilon)) elementwise.
std::vector<double> transform_log10(std::span<const double> xs,
                                    double epsilon = kDefaultEpsilon);

/// (x^lambda - 1) / lambda, or ln x when |lambda| < 1e-6. x must be > 0.
double boxcox(double x, double lambda) noexcept;

/// Box-Cox profile log-likelihood of strictly positive data:
///   (lambda - 1) * sum(ln x) - n/2 * ln(var_lambda)
/// where var_lambda is the population variance of the transformed values.
double boxcox_log_likelihood(std::span<const double> xs, double lambda);

struct BoxCoxFit {
  double lambda = 1.0;
  std::vector<double> values;
};

inline constexpr double kBoxCoxLambdaMin = -5.0;
inline constexpr double kBoxCoxLambdaMax = 5.0;
inline constexpr std::size_t kBoxCoxMinSamples = 20;

/// Maximum-likelihood lambda over [-5, 5] by golden-section search
/// (tolerance 1e-4) on epsilon-floored data.
double fit_boxcox_lambda(std::span<const double> xs, double epsilon = kDefaultEpsilon);

/// Fits lambda and transforms. Needs at least 20 values that are not all
/// equal after flooring; throws stormsift::Error otherwise.
BoxCoxFit transform_boxcox(std::span<const double> xs, double epsilon = kDefaultEpsilon);

/// Transforms with a caller-supplied lambda (no fitting).
std::vector<double> transform_boxcox(std::span<const double> xs, double lambda, double epsilon);

}  // namespace stormsift::geo
