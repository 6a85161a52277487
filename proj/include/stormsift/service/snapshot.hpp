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
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stormsift/fusion/fusion.hpp"
#include "stormsift/geo/model_selection.hpp"
#include "stormsift/service/config.hpp"
#include "stormsift/user/model.hpp"

namespace stormsift::service {

/// Ordered key/value record of a run. Everything except the timings is a
/// pure function of the inputs and the seed.
struct Manifest {
  std::vector<std::pair<std::string, std::string>> entries;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::string hash;  ///< FNV-1a over the entries and the scored records

  void add(std::string key, std::string value);
  std::optional<std::string> get(const std::string& key) const;

  /// Entries and hash; identical across same-seed runs.
  std::string deterministic_text() const;
  std::string format() const;
};

Manifest parse_manifest(std::istream& in);

struct TextSegmentCalibration {
  std::int64_t segment = 0;
  std::string label;
  std::string issue;  ///< "none", "empty_vocabulary", "seed_term_missing"
  std::size_t tweets = 0;
  std::optional<double> raw_min;
  std::optional<double> raw_max;
};

/// segment,label,issue,tweets,raw_min,raw_max
std::string format_text_segments(std::span<const TextSegmentCalibration> segments);

struct ImageCalibration {
  std::string scorer;
  double calibration_min = 0.0;
  double calibration_max = 0.0;
};

struct SnapshotArtifacts {
  geo::GeoCalibration geo;
  std::vector<TextSegmentCalibration> text;
  user::TrainedUserModel user;
  ImageCalibration image;
};

/// Query order: created_at, then id.
void sort_records(std::vector<fusion::ScoredTweet>& tweets);

class StoreSnapshot {
 public:
  /// Records are reordered by (created_at, id); ids must be unique.
  StoreSnapshot(std::uint64_t version, std::vector<fusion::ScoredTweet> tweets, SnapshotArtifacts artifacts,
                Manifest manifest, PipelineConfig config);

  std::uint64_t version() const noexcept { return version_; }
  std::span<const fusion::ScoredTweet> tweets() const noexcept { return tweets_; }
  std::span<const fusion::ScoreVector> scores() const noexcept { return scores_; }
  std::size_t size() const noexcept { return tweets_.size(); }
  const fusion::ScoredTweet* find(const std::string& id) const;
  const SnapshotArtifacts& artifacts() const noexcept { return artifacts_; }
  const Manifest& manifest() const noexcept { return manifest_; }
  const PipelineConfig& config() const noexcept { return config_; }

 private:
  std::uint64_t version_;
  std::vector<fusion::ScoredTweet> tweets_;
  std::vector<fusion::ScoreVector> scores_;
  std::map<std::string, std::size_t> index_;
  SnapshotArtifacts artifacts_;
  Manifest manifest_;
  PipelineConfig config_;
};

/// Exact-precision record line used for snapshot files and hashing.
std::string snapshot_record(const fusion::ScoredTweet& scored);
fusion::ScoredTweet parse_snapshot_record(const std::string& line, const core::StudyWindow& study,
                                          std::size_t line_no);

std::string content_hash(const Manifest& manifest, std::span<const fusion::ScoredTweet> tweets);

void save_snapshot(const StoreSnapshot& snapshot, const std::string& dir);
StoreSnapshot load_snapshot(const std::string& dir);

/// Holds the published snapshot. Readers take a reference-counted handle and
/// keep using it even after a newer snapshot replaces it.
class SnapshotStore {
 public:
  std::shared_ptr<const StoreSnapshot> current() const;

  /// Throws unless the version is newer than the published one.
  void publish(std::shared_ptr<const StoreSnapshot> snapshot);

  std::uint64_t next_version() const;

 private:
  mutable std::mutex mutex_;
  std::shared_ptr<const StoreSnapshot> current_;
};

struct QueryPage {
  std::vector<const fusion::ScoredTweet*> records;
  std::size_t total = 0;
  std::size_t page = 0;  ///< zero-based
  std::size_t page_size = 0;
};

inline constexpr std::size_t kMaxPageSize = 1000;

QueryPage query(const StoreSnapshot& snapshot, const fusion::ThresholdVector& thresholds, std::size_t page,
                std::size_t page_size);

}  // namespace stormsift::service
