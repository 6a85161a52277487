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

#include <map>
#include <memory>
#include <string>

#include "stormsift/service/map_provider.hpp"
#include "stormsift/service/snapshot.hpp"

namespace stormsift::service {

struct ApiResponse {
  int status = 200;
  std::string body;  ///< JSON
};

/// Routes a GET request against the store's current snapshot. Each call
/// reads exactly one snapshot.
///
///   /snapshot/meta
///   /tweets?geo_min=&text_min=&user_min=&image_min=&page=&page_size=
///   /cdf?axis=
///   /tweet/{id}
///   /config
///
/// Missing thresholds default to 0, page to 0 and page_size to 50. Scores
/// are rounded to 2 decimals.
class ApiHandler {
 public:
  ApiHandler(const SnapshotStore& store, const MapProvider& maps) : store_(store), maps_(maps) {}

  ApiResponse get(const std::string& path, const std::map<std::string, std::string>& params = {}) const;

 private:
  const SnapshotStore& store_;
  const MapProvider& maps_;
};

inline constexpr std::size_t kDefaultPageSize = 50;

double round_score(double value) noexcept;

class ApiServer {
 public:
  ApiServer(const SnapshotStore& store, const MapProvider& maps);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Serves on a background thread and returns the bound port; port 0 picks
  /// a free one.
  int start(const std::string& host, int port);

  /// Serves on the calling thread until stop().
  void run(const std::string& host, int port);

  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace stormsift::service
