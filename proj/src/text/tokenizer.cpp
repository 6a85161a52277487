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

#include "stormsift/text/tokenizer.hpp"

#include <algorithm>
#include <cctype>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/core/time.hpp"

namespace stormsift::text {

// Generated from data/stopwords/en_v1.txt at configure time.
extern const char* const kBuiltinStopwords;

namespace {

enum class CharClass { Letter, Apostrophe, Separator };

/// Classifies the code point starting at s[i] and reports its byte length.
CharClass classify(std::string_view s, std::size_t i, std::size_t& length) {
  const auto c = static_cast<unsigned char>(s[i]);
  length = 1;
  if (c < 0x80) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return CharClass::Letter;
    if (c == '\'') return CharClass::Apostrophe;
    return CharClass::Separator;
  }
  if (c >= 0xF0) length = 4;
  else if (c >= 0xE0) length = 3;
  else if (c >= 0xC0) length = 2;
  length = std::min(length, s.size() - i);
  // U+2019 right single quotation mark.
  if (length == 3 && c == 0xE2 && static_cast<unsigned char>(s[i + 1]) == 0x80 &&
      static_cast<unsigned char>(s[i + 2]) == 0x99) {
    return CharClass::Apostrophe;
  }
  // General punctuation, arrows, dingbats (E2 lead) and emoji (4-byte).
  if (c == 0xE2 || c >= 0xF0) return CharClass::Separator;
  // C2 covers Latin-1 punctuation (no-break space, inverted marks, etc.).
  if (c == 0xC2) return CharClass::Separator;
  return CharClass::Letter;
}

std::string strip_apostrophes(std::string_view word) {
  std::string out;
  for (std::size_t i = 0; i < word.size();) {
    std::size_t len = 1;
    if (classify(word, i, len) != CharClass::Apostrophe) out.append(word.substr(i, len));
    i += len;
  }
  return out;
}

bool starts_with_url(std::string_view lower) {
  return lower.starts_with("http://") || lower.starts_with("https://") || lower.starts_with("www.");
}

void emit_words(std::string_view word, const StopwordList& stopwords, std::vector<std::string>& out) {
  std::string current;
  const auto flush = [&] {
    if (!current.empty() && !stopwords.contains(current)) out.push_back(current);
    current.clear();
  };
  for (std::size_t i = 0; i < word.size();) {
    std::size_t len = 1;
    switch (classify(word, i, len)) {
      case CharClass::Letter:
        for (std::size_t k = 0; k < len; ++k) {
          const char ch = word[i + k];
          current.push_back(len == 1 ? static_cast<char>(std::tolower(static_cast<unsigned char>(ch))) : ch);
        }
        break;
      case CharClass::Apostrophe:
        break;  // joined: "don't" -> "dont"
      case CharClass::Separator:
        flush();
        break;
    }
    i += len;
  }
  flush();
}

}  // namespace

StopwordList::StopwordList(const std::vector<std::string>& words, std::string version)
    : version_(std::move(version)) {
  for (const auto& w : words) {
    const auto t = trim(w);
    if (!t.empty()) words_.insert(strip_apostrophes(to_lower(t)));
  }
}

const StopwordList& StopwordList::builtin() {
  static const StopwordList list = parse(kBuiltinStopwords, "en_v1");
  return list;
}

StopwordList StopwordList::load(const std::string& path) {
  return parse(read_file(path, "text"), path);
}

StopwordList StopwordList::parse(std::string_view contents, std::string version) {
  std::vector<std::string> words;
  for (const auto& line : split(contents, '\n')) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    words.emplace_back(t);
  }
  return StopwordList(words, std::move(version));
}

bool StopwordList::contains(std::string_view token) const {
  return words_.contains(std::string(token));
}

std::vector<std::string> clean_tokenize(std::string_view text, const StopwordList& stopwords) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::string_view word = text.substr(start, i - start);
    if (word.empty()) continue;

    const std::string lower = to_lower(word);
    if (starts_with_url(lower)) continue;
    if (word.front() == '@') continue;
    if (word.front() == '#') {
      std::string tag = "#";
      std::size_t k = 1;
      bool has_letter = false;
      while (k < word.size()) {
        std::size_t len = 1;
        const auto cls = classify(word, k, len);
        const char ch = word[k];
        if (cls == CharClass::Letter) {
          has_letter = true;
          for (std::size_t b = 0; b < len; ++b) {
            tag.push_back(len == 1 ? static_cast<char>(std::tolower(static_cast<unsigned char>(word[k + b])))
                                   : word[k + b]);
          }
        } else if (len == 1 && (std::isdigit(static_cast<unsigned char>(ch)) || ch == '_')) {
          tag.push_back(ch);
        } else {
          break;
        }
        k += len;
      }
      if (has_letter) tokens.push_back(std::move(tag));
      // Anything after the hashtag body ("#irma's", "#irma!!") is ordinary text.
      if (k < word.size()) emit_words(word.substr(k), stopwords, tokens);
      continue;
    }
    emit_words(word, stopwords, tokens);
  }
  return tokens;
}

TokenizedTweet tokenize_tweet(const core::TweetRecord& tweet, core::UtcSeconds study_start,
                              const StopwordList& stopwords) {
  return TokenizedTweet{tweet.id, clean_tokenize(tweet.text, stopwords),
                        core::bucket_hourly(tweet.created_at, study_start)};
}

}  // namespace stormsift::text
