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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stormsift/text/embedding.hpp"
#include "stormsift/text/scoring.hpp"
#include "stormsift/text/tokenizer.hpp"

namespace stormsift::text {

struct TextScorerConfig {
  TextModelParams params;
  TextFormula formula = TextFormula::DP;
  std::string seed_term = "irma";
  int segment_hours = 1;  ///< 1 for hourly corpora, 24 for daily segments
  int threads = 1;
};

/// Segment id of an hourly window: floor(index / segment_hours).
std::int64_t segment_of(const core::TimeWindow& window, int segment_hours);

std::string segment_label(std::int64_t segment, int segment_hours);

/// Why a segment could not be scored; its tweets all receive text score 0.
enum class SegmentIssue { None, EmptyVocabulary, SeedTermMissing };

std::string segment_issue_name(SegmentIssue issue);

struct SegmentModel {
  std::int64_t segment = 0;
  std::vector<std::size_t> members;  ///< indices into the tweet list
  std::optional<EmbeddingTable> table;
  SegmentIssue issue = SegmentIssue::None;
};

/// Trains one embedding table per segment. Segments are independent, so
/// `threads` > 1 trains them concurrently with identical results.
std::vector<SegmentModel> train_segments(std::span<const TokenizedTweet> tweets,
                                         const TextModelParams& params, const std::string& seed_term,
                                         int segment_hours, int threads = 1);

struct TextScoringResult {
  std::vector<std::optional<double>> raw;  ///< aligned with the input tweets
  std::vector<double> scores;              ///< 0-100 within each segment
};

TextScoringResult score_segments(std::span<const TokenizedTweet> tweets,
                                 std::span<const SegmentModel> models, TextFormula formula,
                                 const std::string& seed_term);

struct TextScoringRun {
  std::vector<SegmentModel> models;
  TextScoringResult result;
};

TextScoringRun score_corpus(std::span<const TokenizedTweet> tweets, const TextScorerConfig& config);

}  // namespace stormsift::text
