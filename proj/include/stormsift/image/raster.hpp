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
#include <string>
#include <vector>

namespace stormsift::image {

/// 8-bit RGB raster, rows top to bottom.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  ///< width * height * 3

  RgbImage() = default;
  RgbImage(int w, int h);

  std::uint8_t* at(int x, int y) { return &pixels[(static_cast<std::size_t>(y) * width + x) * 3]; }
  const std::uint8_t* at(int x, int y) const {
    return &pixels[(static_cast<std::size_t>(y) * width + x) * 3];
  }
  bool empty() const noexcept { return width <= 0 || height <= 0; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// Decodes PNG, JPEG or binary PPM (P6), chosen by the file's magic bytes.
/// Throws stormsift::Error on unreadable or unsupported files.
RgbImage load_image(const std::string& path);

void save_png(const std::string& path, const RgbImage& image);
void save_ppm(const std::string& path, const RgbImage& image);

}  // namespace stormsift::image
