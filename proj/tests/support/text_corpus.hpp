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
#include "stormsift/text/sweep.hpp"

namespace stormsift::testing {

inline const std::vector<std::string>& storm_topic_tokens() {
  static const std::vector<std::string> tokens = {
      "flood", "surge", "evacuate", "shelter", "landfall", "gusts", "outage", "debris",
      "flooding", "rescue", "hurricane", "damage"};
  return tokens;
}

inline const std::vector<std::string>& chatter_tokens() {
  static const std::vector<std::string> tokens = {
      "pizza", "game", "music", "coffee", "movie", "weekend", "birthday", "dinner",
      "vacation", "football", "concert", "selfie", "puppy", "gym", "beach", "brunch",
      "netflix", "tacos", "playlist", "shopping", "sunset", "yoga", "party", "wedding"};
  return tokens;
}

/// One hourly window of tweets. Related tweets mix several storm words with
/// chatter and name the seed term about half the time; unrelated tweets are
/// chatter of varying length, a quarter of them with one stray storm word.
inline std::vector<text::LabeledTweet> planted_corpus(std::size_t n, double related_share,
                                                      std::uint64_t seed, std::int64_t window = 0) {
  Rng rng(seed);
  const auto& topic = storm_topic_tokens();
  const auto& chatter = chatter_tokens();
  std::vector<text::LabeledTweet> corpus;
  corpus.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    text::LabeledTweet lt;
    lt.related = rng.bernoulli(related_share);
    lt.tweet.tweet_id = "t" + std::to_string(window) + "-" + std::to_string(i);
    lt.tweet.window = core::TimeWindow{window, window * 3600};
    auto& tokens = lt.tweet.tokens;
    if (lt.related) {
      if (rng.bernoulli(0.5)) tokens.push_back("irma");
      const auto n_topic = 2 + rng.below(4);
      for (std::uint64_t k = 0; k < n_topic; ++k) tokens.push_back(topic[rng.below(topic.size())]);
      const auto n_chatter = 2 + rng.below(5);
      for (std::uint64_t k = 0; k < n_chatter; ++k) tokens.push_back(chatter[rng.below(chatter.size())]);
    } else {
      const auto n_chatter = 1 + rng.below(6);
      for (std::uint64_t k = 0; k < n_chatter; ++k) tokens.push_back(chatter[rng.below(chatter.size())]);
      if (rng.bernoulli(0.25)) tokens.push_back(topic[rng.below(topic.size())]);
    }
    std::vector<std::string> shuffled = tokens;
    rng.shuffle(std::span<std::string>(shuffled));
    tokens = std::move(shuffled);
    corpus.push_back(std::move(lt));
  }
  return corpus;
}

/// Sentences where "alpha" and "beta" occur in interchangeable contexts.
inline std::vector<std::vector<std::string>> synonym_corpus(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<std::string> left = {"red", "green", "blue", "amber", "violet"};
  const std::vector<std::string> right = {"river", "canyon", "meadow", "harbor", "summit"};
  const std::vector<std::string> other = {"lorem", "ipsum", "dolor", "sit", "amet", "elit"};
  std::vector<std::vector<std::string>> sentences;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> s;
    s.push_back(left[rng.below(left.size())]);
    s.push_back(rng.bernoulli(0.5) ? "alpha" : "beta");
    s.push_back(right[rng.below(right.size())]);
    if (rng.bernoulli(0.5)) {
      s.push_back(other[rng.below(other.size())]);
      s.push_back(other[rng.below(other.size())]);
    }
    sentences.push_back(std::move(s));
  }
  return sentences;
}

}  // namespace stormsift::testing
