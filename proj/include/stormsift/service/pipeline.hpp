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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stormsift/core/tweet_stream.hpp"
#include "stormsift/geo/model_selection.hpp"
#include "stormsift/image/scorer.hpp"
#include "stormsift/service/config.hpp"
#include "stormsift/service/snapshot.hpp"
#include "stormsift/text/pipeline.hpp"
#include "stormsift/text/tokenizer.hpp"
#include "stormsift/user/validation.hpp"

namespace stormsift::service {

using StageTimings = std::vector<std::pair<std::string, double>>;

struct IngestResult {
  core::TweetParseResult tweets;
  std::vector<core::SensorReading> sensors;
  std::vector<core::TrackPoint> track;
  std::vector<core::LabelRecord> labels;
};

/// Throws Error("ingest", ...) on unreadable inputs or when no tweet is
/// accepted.
IngestResult ingest_inputs(const PipelineConfig& config);

/// Majority vote per subject; a tie counts as unrelated.
std::map<std::string, bool> consensus_labels(std::span<const core::LabelRecord> labels);

struct GeoStage {
  /// Aligned with the accepted tweets; empty when the tweet's hour has no
  /// sensor readings or track point.
  std::vector<std::optional<geo::GeoFeatures>> features;
  std::size_t uncovered = 0;
};

GeoStage compute_geo_features(const IngestResult& ingest, const PipelineConfig& config);

/// Fits on the accepted tweets that carry a consensus label.
geo::GeoModelSelection select_geo(const IngestResult& ingest, const GeoStage& stage,
                                  const PipelineConfig& config);

struct TextStage {
  std::vector<text::TokenizedTweet> tokens;
  text::TextScoringRun run;
  std::vector<TextSegmentCalibration> calibration;
};

TextStage run_text(const IngestResult& ingest, const PipelineConfig& config);

struct UserStage {
  std::vector<user::AuthorFeatures> authors;
  user::GridSearchResult grid;
  user::TrainedUserModel model;
  std::map<std::string, double> scores;  ///< by user id
};

/// The verified flag of each author is the training label.
UserStage run_user(const IngestResult& ingest, const PipelineConfig& config);

struct ImageStage {
  std::vector<image::ImageResult> results;  ///< aligned with the accepted tweets
  ImageCalibration calibration;
  std::size_t media_tweets = 0;
};

ImageStage run_images(const IngestResult& ingest, const PipelineConfig& config);

/// Scores every accepted tweet on all four axes, fuses at the configured
/// thresholds and seals the manifest.
StoreSnapshot score_pipeline(const IngestResult& ingest, const geo::GeoCalibration& calibration,
                             const PipelineConfig& config, std::uint64_t version = 1,
                             StageTimings prior_timings = {});

/// ingest, select-geo and score in one pass.
StoreSnapshot run_pipeline(const PipelineConfig& config, std::uint64_t version = 1);

}  // namespace stormsift::service
