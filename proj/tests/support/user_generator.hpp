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

#include <cmath>

#include "stormsift/common/random.hpp"
#include "stormsift/user/features.hpp"

namespace stormsift::testing {

/// Ground truth for the synthetic verified-user population: an interaction
/// of audience size, account maturity and follow-back ratio, or an active
/// linked account with a mid-sized audience.
inline bool synthetic_verified_rule(const user::UserFeatures& f) {
  const bool established = f.followers_count >= 20000 && f.account_age_days >= 365 &&
                           f.friends_count * 10 <= f.followers_count;
  const bool active_outlet = f.followers_count >= 3000 && f.has_weblinks &&
                             f.message_frequency >= 5.0 && f.message_frequency <= 50.0;
  return established || active_outlet;
}

inline user::UserFeatures draw_user(Rng& rng) {
  user::UserFeatures f;
  f.account_age_days = rng.uniform(0.0, 4000.0);
  f.followers_count = static_cast<std::int64_t>(rng.lognormal(6.5, 2.2));
  f.friends_count = static_cast<std::int64_t>(rng.lognormal(5.5, 1.5));
  f.statuses_count = static_cast<std::int64_t>(rng.lognormal(8.0, 1.8));
  f.has_weblinks = rng.bernoulli(0.4);
  f.hashtag_count = static_cast<std::int64_t>(rng.below(6));
  f.has_media = rng.bernoulli(0.3);
  f.is_geolocated = rng.bernoulli(0.5);
  f.message_frequency = static_cast<double>(f.statuses_count) / std::max(f.account_age_days, 1.0);
  return f;
}

/// `n` users, one verified per `ratio` unverified, labels fixed by the rule
/// above (features are redrawn until they agree with the chosen label).
inline user::Dataset verified_users(std::size_t n, int ratio, std::uint64_t seed) {
  Rng rng(seed);
  const auto n_pos = static_cast<std::size_t>(std::lround(static_cast<double>(n) / (ratio + 1)));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(std::span<std::size_t>(order));

  user::Dataset d;
  d.feature_names = user::all_feature_names();
  d.rows.resize(n);
  d.labels.assign(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    const bool label = k < n_pos;
    user::UserFeatures f = draw_user(rng);
    while (synthetic_verified_rule(f) != label) f = draw_user(rng);
    d.rows[i] = user::feature_vector(f, d.feature_names);
    d.labels[i] = label;
  }
  return d;
}

inline user::Dataset xor_dataset() {
  user::Dataset d;
  d.feature_names = {"has_weblinks", "has_media"};
  d.rows = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  d.labels = {false, true, true, false};
  return d;
}

/// Label fixed by feature 0 alone; the other columns are noise and the last is constant.
inline user::Dataset determined_by_first(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  user::Dataset d;
  d.feature_names = {"followers_count", "friends_count", "statuses_count", "hashtag_count", "has_media"};
  for (std::size_t i = 0; i < n; ++i) {
    const double a = rng.uniform();
    d.rows.push_back({a, rng.uniform(), rng.uniform(), rng.uniform(), 1.0});
    d.labels.push_back(a > 0.6);
  }
  return d;
}

}  // namespace stormsift::testing
