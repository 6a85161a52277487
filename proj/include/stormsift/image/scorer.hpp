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

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stormsift/core/types.hpp"
#include "stormsift/image/raster.hpp"

namespace stormsift::image {

inline constexpr double kDefaultGate = 0.5;
inline constexpr double kProbabilityFloor = 1e-9;

struct TagProbabilities {
  double flood = 0.0;
  double wind = 0.0;
  double destruction = 0.0;

  friend bool operator==(const TagProbabilities&, const TagProbabilities&) = default;
};

enum class ScoreSource { Precomputed, ToyModel };

struct ImageScores {
  double p_related = 0.0;
  std::optional<TagProbabilities> tags;  ///< present iff p_related >= gate
  ScoreSource source = ScoreSource::Precomputed;

  friend bool operator==(const ImageScores&, const ImageScores&) = default;
};

/// Turns one media reference into image scores. Implementations are
/// deterministic and safe to call concurrently.
class ImageScorer {
 public:
  virtual ~ImageScorer() = default;

  virtual ImageScores score(const core::MediaRef& media) const = 0;

  /// Bounds of log(clamp(p_related)) used to rescale onto 0-100.
  virtual double calibration_min() const = 0;
  virtual double calibration_max() const = 0;

  virtual std::string name() const = 0;
};

/// Reads media_id,p_related,p_flood,p_wind,p_destruction (header optional).
/// Stage-2 columns may be empty when p_related < gate and are dropped in that
/// case. Throws stormsift::ParseError on bad rows and duplicate ids.
std::map<std::string, ImageScores> parse_precomputed_scores(std::istream& in, double gate = kDefaultGate);
std::map<std::string, ImageScores> load_precomputed_scores(const std::string& path, double gate = kDefaultGate);

void write_precomputed_scores(std::ostream& out, const std::map<std::string, ImageScores>& scores);

/// Serves scores from a precomputed table; calibration spans the table.
/// Unknown media ids throw stormsift::Error.
class PrecomputedScorer : public ImageScorer {
 public:
  explicit PrecomputedScorer(std::map<std::string, ImageScores> table);

  ImageScores score(const core::MediaRef& media) const override;
  double calibration_min() const override { return min_; }
  double calibration_max() const override { return max_; }
  std::string name() const override { return "precomputed"; }

  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::map<std::string, ImageScores> table_;
  double min_ = 0.0;
  double max_ = 0.0;
};

/// log(clamp(p, 1e-9, 1)) min-max rescaled onto [0, 100] and clamped; a
/// degenerate calibration range maps to 50.
double rescale_probability(double p_related, double calibration_min, double calibration_max);

struct ImageResult {
  double score = 0.0;  ///< 0 when the tweet has no media
  std::optional<TagProbabilities> tags;
  std::optional<std::string> media_id;  ///< the highest-scoring media item
};

/// Scores every media item and keeps the highest; tags come from that item.
ImageResult image_score(std::span<const core::MediaRef> media, const ImageScorer& scorer);

}  // namespace stormsift::image
