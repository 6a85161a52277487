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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stormsift/core/types.hpp"
#include "stormsift/fusion/fusion.hpp"
#include "stormsift/geo/model_selection.hpp"
#include "stormsift/text/pipeline.hpp"
#include "stormsift/user/model.hpp"
#include "stormsift/user/validation.hpp"

namespace stormsift::service {

/// Everything a pipeline run needs. Text, user and geo seeds are all derived
/// from `seed`.
struct PipelineConfig {
  core::StudyWindow study;

  std::string tweets_path;
  std::string sensors_path;
  std::string track_path;
  std::string labels_path;
  std::string image_scores_path;  ///< optional when no tweet carries media

  geo::GeoSelectionConfig geo;
  text::TextScorerConfig text;

  user::ModelKind user_kind = user::ModelKind::RandomForest;
  user::GridSpec user_grid;  ///< empty means the model's default grid

  double image_gate = 0.5;
  fusion::ThresholdVector thresholds = fusion::kRecommendedThresholds;

  std::string bind_host = "127.0.0.1";
  int bind_port = 8080;

  std::uint64_t seed = 1;
  int threads = 1;

  /// Range checks only; see check_inputs for the file paths.
  void validate() const;

  /// Throws Error("config", ...) when a required input file is missing.
  void check_inputs() const;
};

/// Applies one `key = value` setting. Relative paths resolve against
/// `base_dir` when it is non-empty.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value,
                   const std::string& base_dir = {});

std::vector<std::string> config_keys();

PipelineConfig parse_config(std::istream& in, const std::string& base_dir = {});
PipelineConfig load_config(const std::string& path);

/// Canonical key/value listing, in config_keys() order.
std::vector<std::pair<std::string, std::string>> config_entries(const PipelineConfig& config);
std::string format_config(const PipelineConfig& config);

/// "n_trees=50,100;max_depth=6,12"
user::GridSpec parse_grid(std::string_view text);
std::string format_grid(const user::GridSpec& grid);

}  // namespace stormsift::service
