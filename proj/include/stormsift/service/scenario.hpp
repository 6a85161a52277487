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

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stormsift/core/types.hpp"
#include "stormsift/image/scorer.hpp"

namespace stormsift::service {

/// Synthetic landfall over Florida: a track moving north along the west
/// coast, stations at fixed cities, and tweets whose relatedness drives
/// their place, words and media.
struct ScenarioOptions {
  std::size_t tweets = 1000;
  std::size_t stations = 10;
  std::size_t hours = 72;
  std::size_t authors = 350;
  double related_share = 0.35;
  double verified_share = 0.08;
  double labeled_share = 0.4;
  std::size_t raters = 3;
  std::uint64_t seed = 2017;
};

struct Scenario {
  core::StudyWindow study;
  std::vector<core::TweetRecord> tweets;
  std::vector<core::SensorReading> sensors;
  std::vector<core::TrackPoint> track;
  std::vector<core::LabelRecord> labels;
  std::map<std::string, image::ImageScores> image_scores;
  std::set<std::string> related;  ///< ground truth tweet ids
};

Scenario generate_scenario(const ScenarioOptions& options = {});

/// Writes tweets.ndjson, sensors.csv, track.csv, labels.csv,
/// image_scores.csv, truth.csv and a scenario.conf that points at them.
void write_scenario(const Scenario& scenario, const std::string& dir, std::uint64_t pipeline_seed = 1);

std::string scenario_config_text(const Scenario& scenario, std::uint64_t pipeline_seed);

}  // namespace stormsift::service
