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
#include <span>
#include <string>
#include <vector>

#include "stormsift/image/augment.hpp"
#include "stormsift/image/scorer.hpp"

namespace stormsift::image {

inline constexpr int kHistogramBins = 4;
inline constexpr int kEdgeThreshold = 40;
inline constexpr std::size_t kToyFeatureCount = 3 * kHistogramBins + 1;

/// Per-channel 4-bin color histogram (fractions of pixels) followed by edge
/// density: the share of pixels whose gray-level gradient |dx| + |dy|
/// exceeds 40.
std::vector<double> image_features(const RgbImage& image);

/// Unweighted logistic regression on standardized features.
struct LogisticModel {
  std::vector<double> means;
  std::vector<double> scales;
  std::vector<double> weights;  ///< bias first

  double predict(std::span<const double> x) const;
};

LogisticModel fit_logistic(std::span<const std::vector<double>> rows, const std::vector<bool>& labels,
                           double l2 = 1e-4, int max_iter = 5000, double tolerance = 1e-6);

struct ToyImageModel {
  std::uint64_t seed = 0;
  double gate = kDefaultGate;
  LogisticModel related;
  LogisticModel flood;
  LogisticModel wind;
  LogisticModel destruction;
  double calibration_min = 0.0;
  double calibration_max = 0.0;
};

/// Stage 1 learns related vs not related on every image; stage 2 learns one
/// model per tag on the related images. Throws stormsift::Error on an empty
/// list or when only one related class is present.
ToyImageModel train_toy_classifier(std::span<const LabeledImage> images, std::uint64_t seed,
                                   double gate = kDefaultGate);

ImageScores score_image(const ToyImageModel& model, const RgbImage& image);

struct ToyEvaluation {
  double accuracy = 0.0;  ///< stage 1 on the held-out part
  double f1 = 0.0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  ToyImageModel model;
};

/// Seeded stratified 70/30 split, train on 70, report stage-1 metrics on 30.
ToyEvaluation evaluate_toy_classifier(std::span<const LabeledImage> images, std::uint64_t seed,
                                      double gate = kDefaultGate);

void save_toy_model(std::ostream& out, const ToyImageModel& model);
ToyImageModel load_toy_model(std::istream& in);

/// Decodes media files (paths relative to `base_dir` unless absolute) and
/// scores them with a toy model.
class ToyModelScorer : public ImageScorer {
 public:
  ToyModelScorer(ToyImageModel model, std::string base_dir);

  ImageScores score(const core::MediaRef& media) const override;
  double calibration_min() const override { return model_.calibration_min; }
  double calibration_max() const override { return model_.calibration_max; }
  std::string name() const override { return "toy"; }

 private:
  ToyImageModel model_;
  std::string base_dir_;
};

}  // namespace stormsift::image
