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
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stormsift/core/types.hpp"

namespace stormsift::core {

enum class RejectReason {
  Malformed,
  NoLocation,
  InvalidLocation,
  OutsideStudyWindow,
  InvalidAuthor,
  DuplicateId,
};

const char* reject_reason_name(RejectReason reason) noexcept;

struct RejectReport {
  std::size_t record = 0;  ///< 1-based index among non-blank input lines
  RejectReason reason = RejectReason::Malformed;
  std::string detail;
};

struct TweetParseResult {
  std::vector<TweetRecord> accepted;
  std::vector<RejectReport> rejected;

  std::size_t total() const noexcept { return accepted.size() + rejected.size(); }
};

/// Parses one newline-delimited JSON tweet record. Duplicate ids are not
/// detected here since they are a property of a whole stream.
std::variant<TweetRecord, RejectReport> parse_tweet_record(std::string_view line,
                                                           const StudyWindow& study,
                                                           std::size_t record_no = 1);

/// Parses a whole stream. Malformed or out-of-window records are reported
/// and skipped; the stream itself never aborts on a bad record. Blank lines
/// are not records. Throws stormsift::Error if the stream cannot be read.
TweetParseResult parse_tweet_stream(std::istream& source, const StudyWindow& study);

TweetParseResult load_tweet_file(const std::string& path, const StudyWindow& study);

/// One-line JSON encoding that parse_tweet_record reads back unchanged.
std::string serialize_tweet(const TweetRecord& tweet);

}  // namespace stormsift::core
