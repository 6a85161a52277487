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

#include "stormsift/text/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "stormsift/common/error.hpp"

namespace stormsift::text {

std::int64_t segment_of(const core::TimeWindow& window, int segment_hours) {
  if (segment_hours <= 0) throw Error("text", "segment_hours must be positive");
  const std::int64_t h = segment_hours;
  return window.index >= 0 ? window.index / h : -((-window.index + h - 1) / h);
}

std::string segment_label(std::int64_t segment, int segment_hours) {
  return (segment_hours == 1 ? "hour-" : "segment" + std::to_string(segment_hours) + "h-") +
         std::to_string(segment);
}

std::string segment_issue_name(SegmentIssue issue) {
  switch (issue) {
    case SegmentIssue::None: return "none";
    case SegmentIssue::EmptyVocabulary: return "empty_vocabulary";
    case SegmentIssue::SeedTermMissing: return "seed_term_missing";
  }
  return "?";
}

std::vector<SegmentModel> train_segments(std::span<const TokenizedTweet> tweets,
                                         const TextModelParams& params, const std::string& seed_term,
                                         int segment_hours, int threads) {
  params.validate();
  std::map<std::int64_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    groups[segment_of(tweets[i].window, segment_hours)].push_back(i);
  }
  std::vector<SegmentModel> models;
  models.reserve(groups.size());
  for (auto& [segment, members] : groups) {
    SegmentModel m;
    m.segment = segment;
    m.members = std::move(members);
    models.push_back(std::move(m));
  }

  const auto train_one = [&](SegmentModel& m) {
    std::vector<std::vector<std::string>> sentences;
    sentences.reserve(m.members.size());
    bool any_token = false;
    for (auto i : m.members) {
      sentences.push_back(tweets[i].tokens);
      any_token = any_token || !tweets[i].tokens.empty();
    }
    try {
      if (!any_token) throw Error("text", "empty segment");
      m.table = train_embeddings(sentences, params, segment_label(m.segment, segment_hours));
    } catch (const Error&) {
      m.issue = SegmentIssue::EmptyVocabulary;
      return;
    }
    if (!m.table->contains(seed_term)) m.issue = SegmentIssue::SeedTermMissing;
  };

  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || models.size() < 2) {
    for (auto& m : models) train_one(m);
    return models;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, models.size()); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < models.size(); i = next++) {
          try {
            train_one(models[i]);
          } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return models;
}

TextScoringResult score_segments(std::span<const TokenizedTweet> tweets,
                                 std::span<const SegmentModel> models, TextFormula formula,
                                 const std::string& seed_term) {
  TextScoringResult result;
  result.raw.assign(tweets.size(), std::nullopt);
  result.scores.assign(tweets.size(), 0.0);
  for (const auto& m : models) {
    if (m.issue != SegmentIssue::None) continue;
    std::vector<std::optional<double>> raw;
    raw.reserve(m.members.size());
    for (auto i : m.members) {
      raw.push_back(score_tweet(formula, seed_term, tweets[i].tokens, *m.table));
    }
    const auto scaled = text_scores(raw);
    for (std::size_t j = 0; j < m.members.size(); ++j) {
      result.raw[m.members[j]] = raw[j];
      result.scores[m.members[j]] = scaled[j];
    }
  }
  return result;
}

TextScoringRun score_corpus(std::span<const TokenizedTweet> tweets, const TextScorerConfig& config) {
  TextScoringRun run;
  run.models = train_segments(tweets, config.params, config.seed_term, config.segment_hours,
                              config.threads);
  run.result = score_segments(tweets, run.models, config.formula, config.seed_term);
  return run;
}

}  // namespace stormsift::text
