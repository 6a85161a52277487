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

#include <string>
#include <vector>

#include "stormsift/common/random.hpp"
#include "stormsift/image/augment.hpp"

namespace stormsift::testing {

enum class Scene { Flood, Rubble, Field };

/// Flood scenes are mostly blue water, rubble scenes are blocky gray texture,
/// fields are plain green with mild noise.
inline image::RgbImage draw_scene(Scene scene, Rng& rng, int size = 16) {
  image::RgbImage img(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      auto* p = img.at(x, y);
      switch (scene) {
        case Scene::Flood:
          p[0] = static_cast<std::uint8_t>(20 + rng.below(60));
          p[1] = static_cast<std::uint8_t>(50 + rng.below(60));
          p[2] = static_cast<std::uint8_t>(150 + rng.below(90));
          break;
        case Scene::Rubble: {
          Rng block(static_cast<std::uint64_t>((x / 2) * 131 + (y / 2)) ^ rng.next());
          const auto g = static_cast<std::uint8_t>(60 + block.below(150));
          p[0] = p[1] = p[2] = g;
          break;
        }
        case Scene::Field:
          p[0] = static_cast<std::uint8_t>(30 + rng.below(40));
          p[1] = static_cast<std::uint8_t>(130 + rng.below(60));
          p[2] = static_cast<std::uint8_t>(30 + rng.below(40));
          break;
      }
    }
  }
  return img;
}

inline std::vector<image::LabeledImage> scene_dataset(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<image::LabeledImage> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto scene = static_cast<Scene>(rng.below(3));
    image::LabeledImage li;
    li.id = "img" + std::to_string(i);
    li.image = draw_scene(scene, rng);
    li.label.subject_id = li.id;
    li.label.rater_id = "synthetic";
    li.label.related = scene != Scene::Field;
    if (scene == Scene::Flood) li.label.tags = {core::Tag::Flooding};
    if (scene == Scene::Rubble) li.label.tags = {core::Tag::Destruction};
    out.push_back(std::move(li));
  }
  return out;
}

}  // namespace stormsift::testing
