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

#include "stormsift/user/features.hpp"

#include <algorithm>
#include <map>

#include "stormsift/common/error.hpp"

namespace stormsift::user {

const std::vector<std::string>& all_feature_names() {
  static const std::vector<std::string> names = {
      "account_age_days", "friends_count", "followers_count", "statuses_count", "has_weblinks",
      "hashtag_count",    "has_media",     "is_geolocated",   "message_frequency"};
  return names;
}

double feature_value(const UserFeatures& f, std::string_view name) {
  if (name == "account_age_days") return f.account_age_days;
  if (name == "friends_count") return static_cast<double>(f.friends_count);
  if (name == "followers_count") return static_cast<double>(f.followers_count);
  if (name == "statuses_count") return static_cast<double>(f.statuses_count);
  if (name == "has_weblinks") return f.has_weblinks ? 1.0 : 0.0;
  if (name == "hashtag_count") return static_cast<double>(f.hashtag_count);
  if (name == "has_media") return f.has_media ? 1.0 : 0.0;
  if (name == "is_geolocated") return f.is_geolocated ? 1.0 : 0.0;
  if (name == "message_frequency") return f.message_frequency;
  throw Error("user", "unknown feature '" + std::string(name) + "'");
}

std::vector<double> feature_vector(const UserFeatures& f, std::span<const std::string> names) {
  std::vector<double> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(feature_value(f, n));
  return out;
}

UserFeatures extract_user_features(std::span<const core::TweetRecord> tweets,
                                   core::UtcSeconds event_time) {
  if (tweets.empty()) throw Error("user", "author has no tweets");
  const auto latest = std::max_element(tweets.begin(), tweets.end(), [](const auto& a, const auto& b) {
    return a.created_at < b.created_at;
  });
  const auto& profile = latest->author;
  UserFeatures f;
  f.account_age_days =
      std::max(0.0, static_cast<double>(event_time - profile.account_created_at) /
                        static_cast<double>(core::kSecondsPerDay));
  f.friends_count = profile.friends_count;
  f.followers_count = profile.followers_count;
  f.statuses_count = profile.statuses_count;
  for (const auto& t : tweets) {
    f.has_weblinks = f.has_weblinks || !t.weblinks.empty();
    f.has_media = f.has_media || !t.media.empty();
    f.is_geolocated = f.is_geolocated || t.location_kind == core::LocationKind::Coordinates;
    f.hashtag_count += static_cast<std::int64_t>(t.hashtags.size());
  }
  f.message_frequency =
      static_cast<double>(f.statuses_count) / std::max(f.account_age_days, 1.0);
  return f;
}

std::vector<AuthorFeatures> extract_authors(std::span<const core::TweetRecord> tweets,
                                            core::UtcSeconds event_time) {
  std::map<std::string, std::vector<core::TweetRecord>> by_author;
  for (const auto& t : tweets) by_author[t.author.user_id].push_back(t);
  std::vector<AuthorFeatures> out;
  out.reserve(by_author.size());
  for (const auto& [id, list] : by_author) {
    const auto latest = std::max_element(list.begin(), list.end(), [](const auto& a, const auto& b) {
      return a.created_at < b.created_at;
    });
    out.push_back({id, extract_user_features(list, event_time), latest->author.verified});
  }
  return out;
}

std::size_t Dataset::positives() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset d;
  d.feature_names = feature_names;
  d.rows.reserve(indices.size());
  d.labels.reserve(indices.size());
  for (auto i : indices) {
    d.rows.push_back(rows.at(i));
    d.labels.push_back(labels.at(i));
  }
  return d;
}

Dataset make_dataset(std::span<const AuthorFeatures> authors, std::span<const std::string> names) {
  Dataset d;
  d.feature_names.assign(names.begin(), names.end());
  for (const auto& a : authors) {
    d.rows.push_back(feature_vector(a.features, names));
    d.labels.push_back(a.verified);
  }
  return d;
}

}  // namespace stormsift::user
