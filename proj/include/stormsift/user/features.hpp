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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stormsift/core/types.hpp"

namespace stormsift::user {

struct UserFeatures {
  double account_age_days = 0.0;
  std::int64_t friends_count = 0;
  std::int64_t followers_count = 0;
  std::int64_t statuses_count = 0;
  bool has_weblinks = false;
  std::int64_t hashtag_count = 0;
  bool has_media = false;
  bool is_geolocated = false;
  double message_frequency = 0.0;  ///< statuses per day of account age
};

/// Every supported feature, in the default model order.
const std::vector<std::string>& all_feature_names();

/// Throws stormsift::Error for an unknown name.
double feature_value(const UserFeatures& f, std::string_view name);

std::vector<double> feature_vector(const UserFeatures& f, std::span<const std::string> names);

/// Aggregates one author's tweets. Profile counts come from the most recent
/// tweet; boolean features are true when any tweet has them and hashtags are
/// summed. is_geolocated means an exact coordinate (not a place centroid).
UserFeatures extract_user_features(std::span<const core::TweetRecord> tweets,
                                   core::UtcSeconds event_time);

struct AuthorFeatures {
  std::string user_id;
  UserFeatures features;
  bool verified = false;
};

/// One entry per author, ordered by user id.
std::vector<AuthorFeatures> extract_authors(std::span<const core::TweetRecord> tweets,
                                            core::UtcSeconds event_time);

/// Feature matrix with binary labels (true = verified).
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> rows;
  std::vector<bool> labels;

  std::size_t size() const noexcept { return rows.size(); }
  std::size_t positives() const;
  Dataset subset(std::span<const std::size_t> indices) const;
};

Dataset make_dataset(std::span<const AuthorFeatures> authors, std::span<const std::string> names);

}  // namespace stormsift::user
