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

#include "stormsift/image/augment.hpp"

#include <algorithm>
#include <cmath>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"

namespace stormsift::image {

namespace {

void copy_pixel(const RgbImage& from, int fx, int fy, RgbImage& to, int tx, int ty) {
  const auto* s = from.at(fx, fy);
  auto* d = to.at(tx, ty);
  d[0] = s[0];
  d[1] = s[1];
  d[2] = s[2];
}

}  // namespace

const std::vector<AugmentationOp>& all_augmentation_ops() {
  static const std::vector<AugmentationOp> ops = {
      {AugmentationKind::Rotate90, 1.0},  {AugmentationKind::Rotate180, 1.0},
      {AugmentationKind::Rotate270, 1.0}, {AugmentationKind::Scale, 0.8},
      {AugmentationKind::Scale, 1.2},     {AugmentationKind::HorizontalFlip, 1.0}};
  return ops;
}

std::string op_name(const AugmentationOp& op) {
  switch (op.kind) {
    case AugmentationKind::Rotate90: return "rotate90";
    case AugmentationKind::Rotate180: return "rotate180";
    case AugmentationKind::Rotate270: return "rotate270";
    case AugmentationKind::Scale: return "scale" + format_exact(op.factor);
    case AugmentationKind::HorizontalFlip: return "hflip";
  }
  return "?";
}

AugmentationOp parse_op(std::string_view name) {
  const std::string n = to_lower(trim(name));
  for (const auto& op : all_augmentation_ops()) {
    if (op_name(op) == n) return op;
  }
  throw Error("image", "unknown augmentation '" + std::string(name) + "'");
}

RgbImage apply_op(const RgbImage& in, const AugmentationOp& op) {
  if (in.empty()) throw Error("image", "cannot augment an empty image");
  const int w = in.width, h = in.height;
  switch (op.kind) {
    case AugmentationKind::Rotate90: {
      RgbImage out(h, w);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) copy_pixel(in, x, y, out, h - 1 - y, x);
      return out;
    }
    case AugmentationKind::Rotate180: {
      RgbImage out(w, h);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) copy_pixel(in, x, y, out, w - 1 - x, h - 1 - y);
      return out;
    }
    case AugmentationKind::Rotate270: {
      RgbImage out(h, w);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) copy_pixel(in, x, y, out, y, w - 1 - x);
      return out;
    }
    case AugmentationKind::Scale: {
      if (!(op.factor > 0.0) || !std::isfinite(op.factor)) throw Error("image", "scale factor must be positive");
      const int nw = std::max(1, static_cast<int>(std::lround(w * op.factor)));
      const int nh = std::max(1, static_cast<int>(std::lround(h * op.factor)));
      RgbImage out(nw, nh);
      for (int y = 0; y < nh; ++y) {
        const int sy = std::min(h - 1, static_cast<int>((y + 0.5) * h / nh));
        for (int x = 0; x < nw; ++x) {
          const int sx = std::min(w - 1, static_cast<int>((x + 0.5) * w / nw));
          copy_pixel(in, sx, sy, out, x, y);
        }
      }
      return out;
    }
    case AugmentationKind::HorizontalFlip: {
      RgbImage out(w, h);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) copy_pixel(in, x, y, out, w - 1 - x, y);
      return out;
    }
  }
  return in;
}

std::vector<LabeledImage> augment_dataset(std::span<const LabeledImage> images,
                                          std::span<const AugmentationOp> ops, double target_ratio) {
  if (ops.empty()) throw Error("image", "augmentation needs at least one op");
  if (!(target_ratio > 0.0 && target_ratio <= 1.0)) throw Error("image", "target ratio must be in (0, 1]");
  std::vector<LabeledImage> out(images.begin(), images.end());
  std::size_t related = 0;
  for (const auto& img : images) related += img.label.related;
  const std::size_t unrelated = images.size() - related;
  const bool minority_related = related < unrelated;
  const std::size_t minority = std::min(related, unrelated);
  const std::size_t majority = std::max(related, unrelated);
  if (minority == 0) throw Error("image", "augmentation needs images of both classes");
  const auto wanted = static_cast<std::size_t>(std::ceil(target_ratio * static_cast<double>(majority)));
  if (minority >= wanted) return out;
  std::size_t missing = wanted - minority;

  std::vector<std::size_t> sources;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].label.related == minority_related) sources.push_back(i);
  }
  while (missing > 0) {
    std::vector<std::size_t> produced;
    for (std::size_t k = 0; k < ops.size() && missing > 0; ++k) {
      for (std::size_t s = 0; s < sources.size() && missing > 0; ++s) {
        const LabeledImage& src = out[sources[s]];
        LabeledImage copy;
        copy.id = src.id + "~" + op_name(ops[k]);
        copy.image = apply_op(src.image, ops[k]);
        copy.label = src.label;
        copy.label.subject_id = copy.id;
        copy.source_id = src.is_synthetic() ? src.source_id : src.id;
        copy.ops = src.ops;
        copy.ops.push_back(ops[k]);
        out.push_back(std::move(copy));
        produced.push_back(out.size() - 1);
        --missing;
      }
    }
    sources = std::move(produced);
  }
  return out;
}

}  // namespace stormsift::image
