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

// Seeded reference samples shared by the Shapiro-Wilk tests and the oracle
// dump tool (tests/oracles/dump_normality_samples.cpp).

#include <cstdint>
#include <string>
#include <vector>

#include "stormsift/common/random.hpp"

namespace stormsift::testing {

enum class SampleFamily { Normal, Exponential, Uniform, LogNormal };

struct ReferenceSample {
  std::string name;
  SampleFamily family;
  std::size_t n;
  std::uint64_t seed;
};

inline const std::vector<ReferenceSample>& reference_samples() {
  static const std::vector<ReferenceSample> samples{
      {"normal_20", SampleFamily::Normal, 20, 101},
      {"normal_200", SampleFamily::Normal, 200, 102},
      {"normal_5000", SampleFamily::Normal, 5000, 103},
      {"exponential_20", SampleFamily::Exponential, 20, 201},
      {"exponential_200", SampleFamily::Exponential, 200, 202},
      {"exponential_5000", SampleFamily::Exponential, 5000, 203},
      {"uniform_20", SampleFamily::Uniform, 20, 301},
      {"uniform_200", SampleFamily::Uniform, 200, 302},
      {"uniform_5000", SampleFamily::Uniform, 5000, 303},
      {"lognormal_200", SampleFamily::LogNormal, 200, 401},
  };
  return samples;
}

inline std::vector<double> draw(SampleFamily family, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> xs;
  xs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (family) {
      case SampleFamily::Normal: xs.push_back(rng.normal()); break;
      case SampleFamily::Exponential: xs.push_back(rng.exponential()); break;
      case SampleFamily::Uniform: xs.push_back(rng.uniform()); break;
      case SampleFamily::LogNormal: xs.push_back(rng.lognormal(0.0, 1.0)); break;
    }
  }
  return xs;
}

inline std::vector<double> draw(const ReferenceSample& s) { return draw(s.family, s.n, s.seed); }

}  // namespace stormsift::testing
