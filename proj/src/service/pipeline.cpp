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


#include "stormsift/service/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/core/csv_io.hpp"
#include "stormsift/core/time.hpp"
#include "stormsift/fusion/fusion.hpp"
#include "stormsift/geo/forcing.hpp"
#include "stormsift/user/features.hpp"

namespace stormsift::service {

namespace {

template <typename Fn>
auto timed(StageTimings& timings, const char* stage, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  auto result = fn();
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  timings.emplace_back(stage, elapsed.count());
  return result;
}

std::string issue_key(text::SegmentIssue issue) {
  switch (issue) {
    case text::SegmentIssue::None: return "none";
    case text::SegmentIssue::EmptyVocabulary: return "empty_vocabulary";
    case text::SegmentIssue::SeedTermMissing: return "seed_term_missing";
  }
  return "?";
}

std::string thresholds_text(const fusion::ThresholdVector& t) {
  return format_exact(t.geo_min) + "," + format_exact(t.text_min) + "," + format_exact(t.user_min) + "," +
         format_exact(t.image_min);
}

}  // namespace

IngestResult ingest_inputs(const PipelineConfig& config) {
  config.validate();
  config.check_inputs();
  IngestResult out;
  try {
    out.tweets = core::load_tweet_file(config.tweets_path, config.study);
    out.sensors = core::load_sensor_csv(config.sensors_path, config.study.start);
    out.track = core::load_track_csv(config.track_path, config.study.start);
    out.labels = core::load_labels(config.labels_path);
  } catch (const Error& e) {
    throw Error("ingest", e.what());
  }
  if (out.tweets.accepted.empty()) {
    throw Error("ingest", "no tweets accepted from " + config.tweets_path + " (" +
                              std::to_string(out.tweets.rejected.size()) + " rejected)");
  }
  return out;
}

std::map<std::string, bool> consensus_labels(std::span<const core::LabelRecord> labels) {
  std::map<std::string, std::pair<int, int>> votes;
  for (const auto& l : labels) {
    auto& [related, total] = votes[l.subject_id];
    related += l.related ? 1 : 0;
    ++total;
  }
  std::map<std::string, bool> out;
  for (const auto& [id, v] : votes) out.emplace(id, 2 * v.first > v.second);
  return out;
}

GeoStage compute_geo_features(const IngestResult& ingest, const PipelineConfig& config) {
  geo::ForcingConfig forcing;
  forcing.idw_power = config.geo.idw_power;
  forcing.d_min_miles = config.geo.d_min_miles;
  const geo::ForcingField field(ingest.sensors, ingest.track, forcing);
  GeoStage stage;
  stage.features.reserve(ingest.tweets.accepted.size());
  for (const auto& t : ingest.tweets.accepted) {
    const auto window = core::bucket_hourly(t.created_at, config.study.start);
    if (!field.covers(window.index)) {
      stage.features.emplace_back(std::nullopt);
      ++stage.uncovered;
      continue;
    }
    stage.features.emplace_back(field.features_at(t.location, window));
  }
  return stage;
}

geo::GeoModelSelection select_geo(const IngestResult& ingest, const GeoStage& stage,
                                  const PipelineConfig& config) {
  const auto labels = consensus_labels(ingest.labels);
  std::vector<geo::LabeledGeoFeatures> samples;
  for (std::size_t i = 0; i < ingest.tweets.accepted.size(); ++i) {
    const auto it = labels.find(ingest.tweets.accepted[i].id);
    if (it == labels.end() || !stage.features[i]) continue;
    samples.push_back({*stage.features[i], it->second});
  }
  if (samples.empty()) throw Error("geo", "no labeled tweet has sensor and track coverage");
  geo::GeoSelectionConfig selection = config.geo;
  selection.seed = config.seed;
  return geo::select_geo_model(samples, selection);
}

TextStage run_text(const IngestResult& ingest, const PipelineConfig& config) {
  TextStage stage;
  const auto& stopwords = text::StopwordList::builtin();
  stage.tokens.reserve(ingest.tweets.accepted.size());
  for (const auto& t : ingest.tweets.accepted) {
    stage.tokens.push_back(text::tokenize_tweet(t, config.study.start, stopwords));
  }
  text::TextScorerConfig scorer = config.text;
  scorer.params.seed = config.seed;
  scorer.threads = config.threads;
  stage.run = text::score_corpus(stage.tokens, scorer);
  for (const auto& m : stage.run.models) {
    TextSegmentCalibration cal;
    cal.segment = m.segment;
    cal.label = text::segment_label(m.segment, scorer.segment_hours);
    cal.issue = issue_key(m.issue);
    cal.tweets = m.members.size();
    for (auto i : m.members) {
      const auto& raw = stage.run.result.raw[i];
      if (!raw) continue;
      cal.raw_min = cal.raw_min ? std::min(*cal.raw_min, *raw) : *raw;
      cal.raw_max = cal.raw_max ? std::max(*cal.raw_max, *raw) : *raw;
    }
    stage.calibration.push_back(std::move(cal));
  }
  return stage;
}

UserStage run_user(const IngestResult& ingest, const PipelineConfig& config) {
  UserStage stage;
  stage.authors = user::extract_authors(ingest.tweets.accepted, config.study.start);
  const auto data = user::make_dataset(stage.authors, user::all_feature_names());
  const auto positives = data.positives();
  if (positives == 0 || positives == data.size()) {
    throw Error("user", "training needs both verified and unverified authors (" + std::to_string(positives) +
                            " of " + std::to_string(data.size()) + " verified)");
  }
  const auto grid = config.user_grid.empty() ? user::default_grid(config.user_kind) : config.user_grid;
  stage.grid = user::grid_search(config.user_kind, data, grid, config.seed, config.threads);
  stage.model = user::train_classifier(config.user_kind, data, stage.grid.best_cell().hyperparams, config.seed,
                                       config.threads);
  for (std::size_t i = 0; i < stage.authors.size(); ++i) {
    const double p = user::predict_proba(stage.model, data.rows[i]);
    stage.scores.emplace(stage.authors[i].user_id, user::user_score(stage.model, p));
  }
  return stage;
}

ImageStage run_images(const IngestResult& ingest, const PipelineConfig& config) {
  ImageStage stage;
  const auto& tweets = ingest.tweets.accepted;
  stage.media_tweets = static_cast<std::size_t>(
      std::count_if(tweets.begin(), tweets.end(), [](const auto& t) { return !t.media.empty(); }));
  if (config.image_scores_path.empty()) {
    if (stage.media_tweets > 0) {
      throw Error("image", std::to_string(stage.media_tweets) +
                               " tweets carry media but no image_scores file is configured");
    }
    stage.calibration.scorer = "none";
    stage.results.assign(tweets.size(), image::ImageResult{});
    return stage;
  }
  const image::PrecomputedScorer scorer(image::load_precomputed_scores(config.image_scores_path, config.image_gate));
  stage.calibration = {scorer.name(), scorer.calibration_min(), scorer.calibration_max()};
  stage.results.reserve(tweets.size());
  for (const auto& t : tweets) stage.results.push_back(image::image_score(t.media, scorer));
  return stage;
}

StoreSnapshot score_pipeline(const IngestResult& ingest, const geo::GeoCalibration& calibration,
                             const PipelineConfig& config, std::uint64_t version, StageTimings timings) {
  config.validate();
  const auto& accepted = ingest.tweets.accepted;
  const auto geo_stage = timed(timings, "geo_features", [&] { return compute_geo_features(ingest, config); });
  const auto text_stage = timed(timings, "text", [&] { return run_text(ingest, config); });
  const auto user_stage = timed(timings, "user", [&] { return run_user(ingest, config); });
  const auto image_stage = timed(timings, "image", [&] { return run_images(ingest, config); });

  auto scored = timed(timings, "fusion", [&] {
    std::vector<fusion::ScoredTweet> out;
    out.reserve(accepted.size());
    for (std::size_t i = 0; i < accepted.size(); ++i) {
      fusion::ScoredTweet s;
      s.tweet = accepted[i];
      s.scores.geo = geo_stage.features[i] ? geo::geo_score(*geo_stage.features[i], calibration) : 0.0;
      s.scores.text = text_stage.run.result.scores[i];
      s.scores.user = user_stage.scores.at(accepted[i].author.user_id);
      s.scores.image = image_stage.results[i].score;
      s.scores.validate();
      s.tags = image_stage.results[i].tags;
      out.push_back(std::move(s));
    }
    fusion::mark_passes(out, config.thresholds);
    sort_records(out);
    return out;
  });

  std::map<std::string, std::size_t> rejects;
  for (const auto& r : ingest.tweets.rejected) ++rejects[core::reject_reason_name(r.reason)];
  const auto labels = consensus_labels(ingest.labels);
  const auto labeled = std::count_if(accepted.begin(), accepted.end(),
                                     [&](const auto& t) { return labels.contains(t.id); });
  std::size_t flagged = 0;
  std::string flagged_list;
  for (const auto& seg : text_stage.calibration) {
    if (seg.issue == "none") continue;
    ++flagged;
    if (!flagged_list.empty()) flagged_list += ';';
    flagged_list += seg.label + ":" + seg.issue;
  }
  const auto& cv = user_stage.grid.best_cell().report.mean;
  const auto passed = std::count_if(scored.begin(), scored.end(), [](const auto& s) { return s.passed; });

  Manifest m;
  m.add("snapshot.version", std::to_string(version));
  m.add("seed", std::to_string(config.seed));
  m.add("study.start", core::format_iso8601(config.study.start));
  m.add("study.end", core::format_iso8601(config.study.end));
  m.add("ingest.records", std::to_string(ingest.tweets.total()));
  m.add("ingest.accepted", std::to_string(accepted.size()));
  m.add("ingest.rejected", std::to_string(ingest.tweets.rejected.size()));
  for (const auto& [reason, count] : rejects) m.add("ingest.rejected." + reason, std::to_string(count));
  m.add("ingest.sensor_readings", std::to_string(ingest.sensors.size()));
  m.add("ingest.track_points", std::to_string(ingest.track.size()));
  m.add("ingest.label_rows", std::to_string(ingest.labels.size()));
  m.add("ingest.labeled_tweets", std::to_string(labeled));
  m.add("geo.function", std::string(geo::geo_function_name(calibration.function)));
  m.add("geo.transform", std::string(geo::transform_name(calibration.transform)));
  m.add("geo.lambda", format_exact(calibration.lambda));
  m.add("geo.train_min", format_exact(calibration.train_min));
  m.add("geo.train_max", format_exact(calibration.train_max));
  m.add("geo.uncovered_tweets", std::to_string(geo_stage.uncovered));
  auto text_params = config.text.params;
  text_params.seed = config.seed;
  m.add("text.params", text_params.describe());
  m.add("text.formula", text::formula_name(config.text.formula));
  m.add("text.seed_term", config.text.seed_term);
  m.add("text.segment_hours", std::to_string(config.text.segment_hours));
  m.add("text.segments", std::to_string(text_stage.calibration.size()));
  m.add("text.segments_flagged", std::to_string(flagged));
  m.add("text.flagged", flagged_list.empty() ? "none" : flagged_list);
  m.add("user.model", user::model_kind_name(config.user_kind));
  m.add("user.hyperparams", user::describe_hyperparams(user_stage.model.hyperparams));
  m.add("user.authors", std::to_string(user_stage.authors.size()));
  m.add("user.verified_authors",
        std::to_string(std::count_if(user_stage.authors.begin(), user_stage.authors.end(),
                                     [](const auto& a) { return a.verified; })));
  m.add("user.cv_f1", format_fixed(cv.f1, 6));
  m.add("user.cv_auroc", format_fixed(cv.auroc, 6));
  m.add("user.calibration_min", format_exact(user_stage.model.calibration_min));
  m.add("user.calibration_max", format_exact(user_stage.model.calibration_max));
  m.add("image.scorer", image_stage.calibration.scorer);
  m.add("image.media_tweets", std::to_string(image_stage.media_tweets));
  m.add("image.calibration_min", format_exact(image_stage.calibration.calibration_min));
  m.add("image.calibration_max", format_exact(image_stage.calibration.calibration_max));
  for (auto axis : fusion::kAllAxes) {
    double sum = 0.0;
    for (const auto& s : scored) sum += s.scores.get(axis);
    m.add("scores." + fusion::axis_name(axis) + ".mean", format_fixed(sum / static_cast<double>(scored.size()), 6));
  }
  m.add("fusion.thresholds", thresholds_text(config.thresholds));
  m.add("fusion.passed", std::to_string(passed));
  m.hash = content_hash(m, scored);
  m.timings_ms = std::move(timings);

  SnapshotArtifacts artifacts{calibration, text_stage.calibration, user_stage.model, image_stage.calibration};
  return StoreSnapshot(version, std::move(scored), std::move(artifacts), std::move(m), config);
}

StoreSnapshot run_pipeline(const PipelineConfig& config, std::uint64_t version) {
  StageTimings timings;
  const auto ingest = timed(timings, "ingest", [&] { return ingest_inputs(config); });
  const auto selection = timed(timings, "geo_select", [&] {
    return select_geo(ingest, compute_geo_features(ingest, config), config);
  });
  return score_pipeline(ingest, selection.calibration, config, version, std::move(timings));
}

}  // namespace stormsift::service
