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

#include "stormsift/geo/shapiro_wilk.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stormsift/common/error.hpp"

namespace stormsift::geo {
namespace {

double poly(std::span<const double> c, double x) {
  double result = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) result = result * x + c[i];
  return result;
}

double normal_upper_tail(double z, double mean, double sd) {
  return 0.5 * std::erfc((z - mean) / (sd * std::sqrt(2.0)));
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error("geo", "normal quantile needs p in (0, 1)");
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
                45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((5226.495278852545925 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
                21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
                  0.24178072517745061177) * r + 1.27045825245236838258) * r +
                3.64784832476320460504) * r + 5.7694972214606914055) * r + 4.6303378461565452959) * r +
             1.42343711074968357734) /
            (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
                  0.0151986665636164571966) * r + 0.14810397642748007459) * r +
                0.68976733498510000455) * r + 1.6763848301838038494) * r + 2.05319162663775882187) * r +
             1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  0.0012426609473880784386) * r + 0.026532189526576123093) * r +
                0.29656057182850489123) * r + 1.7848265399172913358) * r + 5.4637849111641143699) * r +
             6.6579046435011037772) /
            (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
                  1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
                0.0148753612908506148525) * r + 0.13692988092273580531) * r + 0.59983220655588793769) * r +
             1.0);
  }
  return q < 0.0 ? -value : value;
}

ShapiroWilk shapiro_wilk(std::span<const double> input) {
  const std::size_t n = input.size();
  if (n < kShapiroWilkMinN || n > kShapiroWilkMaxN) {
    throw Error("geo", "Shapiro-Wilk needs 3 <= n <= 5000, got " + std::to_string(n));
  }
  std::vector<double> x(input.begin(), input.end());
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (range < 1e-19) throw Error("geo", "Shapiro-Wilk of zero-range data");

  static constexpr double kC1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
  static constexpr double kC2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  static constexpr double kC3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr double kC4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr double kC5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr double kC6[] = {-0.4803, -0.082676, 0.0030302};
  static constexpr double kG[] = {-2.273, 0.459};

  const std::size_t half = n / 2;
  const auto an = static_cast<double>(n);

  // Half-sample coefficients a[1..half] (index 0 unused).
  std::vector<double> a(half + 1, 0.0);
  if (n == 3) {
    a[1] = std::sqrt(0.5);
  } else {
    const double an25 = an + 0.25;
    double summ2 = 0.0;
    for (std::size_t i = 1; i <= half; ++i) {
      a[i] = normal_quantile((static_cast<double>(i) - 0.375) / an25);
      summ2 += a[i] * a[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(kC1, rsn) - a[1] / ssumm2;

    std::size_t first_scaled;
    double fac;
    if (n > 5) {
      first_scaled = 3;
      const double a2 = -a[2] / ssumm2 + poly(kC2, rsn);
      fac = std::sqrt((summ2 - 2.0 * a[1] * a[1] - 2.0 * a[2] * a[2]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[2] = a2;
    } else {
      first_scaled = 2;
      fac = std::sqrt((summ2 - 2.0 * a[1] * a[1]) / (1.0 - 2.0 * a1 * a1));
    }
    a[1] = a1;
    for (std::size_t i = first_scaled; i <= half; ++i) a[i] /= -fac;
  }

  // W is the squared correlation between the ordered sample and the full
  // antisymmetric coefficient vector. Computing 1 - W directly keeps
  // precision when W is very close to 1.
  std::vector<double> coef(n, 0.0);
  for (std::size_t i = 0; i < half; ++i) {
    coef[i] = -a[i + 1];
    coef[n - 1 - i] = a[i + 1];
  }
  double coef_mean = 0.0;
  double x_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    coef_mean += coef[i];
    x_mean += x[i] / range;
  }
  coef_mean /= an;
  x_mean /= an;
  double ssa = 0.0;
  double ssx = 0.0;
  double sax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = coef[i] - coef_mean;
    const double dx = x[i] / range - x_mean;
    ssa += da * da;
    ssx += dx * dx;
    sax += da * dx;
  }
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);

  ShapiroWilk result;
  result.w = 1.0 - w1;

  if (n == 3) {
    constexpr double kSixOverPi = 1.90985931710274;
    constexpr double kPiOverThree = 1.04719755119660;
    result.p_value = std::max(0.0, kSixOverPi * (std::asin(std::sqrt(result.w)) - kPiOverThree));
    return result;
  }
  double y = std::log(w1);
  const double log_n = std::log(an);
  double m;
  double s;
  if (n <= 11) {
    const double gamma = poly(kG, an);
    if (y >= gamma) {
      result.p_value = 1e-99;
      return result;
    }
    y = -std::log(gamma - y);
    m = poly(kC3, an);
    s = std::exp(poly(kC4, an));
  } else {
    m = poly(kC5, log_n);
    s = std::exp(poly(kC6, log_n));
  }
  result.p_value = normal_upper_tail(y, m, s);
  return result;
}

}  // namespace stormsift::geo
