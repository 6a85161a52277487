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
#include <string_view>
#include <unordered_set>
#include <vector>

#include "stormsift/core/types.hpp"

namespace stormsift::text {

/// Lowercase stopwords, compared after apostrophes are removed.
class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(const std::vector<std::string>& words, std::string version = "custom");

  /// The bundled English list (data/stopwords/en_v1.txt), compiled in.
  static const StopwordList& builtin();

  /// One word per line; '#' lines are comments. Throws stormsift::Error.
  static StopwordList load(const std::string& path);
  static StopwordList parse(std::string_view contents, std::string version);

  bool contains(std::string_view token) const;
  std::size_t size() const noexcept { return words_.size(); }
  const std::string& version() const noexcept { return version_; }

 private:
  std::unordered_set<std::string> words_;
  std::string version_;
};

struct TokenizedTweet {
  std::string tweet_id;
  std::vector<std::string> tokens;
  core::TimeWindow window;
};

/// Lowercases, drops URLs, @mentions, punctuation, numerals and stopwords,
/// and keeps hashtags with their '#'. Apostrophes inside words are removed
/// ("don't" -> "dont"). Non-ASCII letters are kept; emoji and typographic
/// symbols act as separators.
std::vector<std::string> clean_tokenize(std::string_view text, const StopwordList& stopwords);

TokenizedTweet tokenize_tweet(const core::TweetRecord& tweet, core::UtcSeconds study_start,
                              const StopwordList& stopwords);

}  // namespace stormsift::text
