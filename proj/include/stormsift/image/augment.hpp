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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stormsift/core/types.hpp"
#include "stormsift/image/raster.hpp"

namespace stormsift::image {

enum class AugmentationKind { Rotate90, Rotate180, Rotate270, Scale, HorizontalFlip };

struct AugmentationOp {
  AugmentationKind kind = AugmentationKind::Rotate90;
  double factor = 1.0;  ///< Scale only: 0.8 or 1.2

  friend bool operator==(const AugmentationOp&, const AugmentationOp&) = default;
};

/// Rotate90, Rotate180, Rotate270, Scale(0.8), Scale(1.2), HorizontalFlip.
const std::vector<AugmentationOp>& all_augmentation_ops();

std::string op_name(const AugmentationOp& op);  ///< e.g. "rotate90", "scale0.8", "hflip"
AugmentationOp parse_op(std::string_view name);

/// Rotations are clockwise; scaling uses nearest-neighbour sampling and keeps
/// every dimension at least one pixel.
RgbImage apply_op(const RgbImage& image, const AugmentationOp& op);

struct LabeledImage {
  std::string id;
  RgbImage image;
  core::LabelRecord label;
  /// Empty for originals; otherwise the original's id and the ops applied to it in order.
  std::string source_id;
  std::vector<AugmentationOp> ops;

  bool is_synthetic() const noexcept { return !ops.empty(); }
};

/// Adds augmented copies of the minority class (related vs not related) until
/// minority / majority reaches `target_ratio` (1.0 = equal counts). Copies
/// cycle through images and ops in order; when every pair is used, the
/// previous round's copies are augmented again. Originals come first in the
/// result, unchanged.
std::vector<LabeledImage> augment_dataset(std::span<const LabeledImage> images,
                                          std::span<const AugmentationOp> ops, double target_ratio = 1.0);

}  // namespace stormsift::image
