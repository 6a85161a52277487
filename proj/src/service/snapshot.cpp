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


#include "stormsift/service/snapshot.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/core/tweet_stream.hpp"

namespace stormsift::service {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr const char* kManifestHeader = "# stormsift manifest v1";
constexpr const char* kTimingPrefix = "timing.";

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("snapshot", "cannot open " + path.string());
  return in;
}

std::string optional_number(const std::optional<double>& v) { return v ? format_exact(*v) : std::string(); }

std::optional<double> parse_optional_number(const std::string& s, std::size_t line) {
  if (trim(s).empty()) return std::nullopt;
  const auto v = parse_double(s);
  if (!v) throw ParseError("snapshot", line, "bad number '" + s + "'");
  return v;
}

std::vector<TextSegmentCalibration> parse_text_segments(std::istream& in) {
  std::vector<TextSegmentCalibration> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 6) throw ParseError("snapshot", line_no, "expected 6 text segment columns");
    TextSegmentCalibration s;
    const auto segment = parse_int(cells[0]);
    const auto tweets = parse_int(cells[3]);
    if (!segment || !tweets || *tweets < 0) throw ParseError("snapshot", line_no, "bad text segment row");
    s.segment = *segment;
    s.label = cells[1];
    s.issue = cells[2];
    s.tweets = static_cast<std::size_t>(*tweets);
    s.raw_min = parse_optional_number(cells[4], line_no);
    s.raw_max = parse_optional_number(cells[5], line_no);
    out.push_back(std::move(s));
  }
  return out;
}

ImageCalibration parse_image_calibration(std::istream& in) {
  ImageCalibration cal;
  for (const auto& [key, value] : parse_key_values(in, "snapshot")) {
    if (key == "scorer") {
      cal.scorer = value;
    } else if (key == "calibration_min" || key == "calibration_max") {
      const auto v = parse_double(value);
      if (!v) throw Error("snapshot", "bad image " + key + " '" + value + "'");
      (key == "calibration_min" ? cal.calibration_min : cal.calibration_max) = *v;
    } else {
      throw Error("snapshot", "unknown image calibration key '" + key + "'");
    }
  }
  return cal;
}

}  // namespace

std::string format_text_segments(std::span<const TextSegmentCalibration> segments) {
  std::ostringstream os;
  os << "segment,label,issue,tweets,raw_min,raw_max\n";
  for (const auto& s : segments) {
    os << s.segment << ',' << s.label << ',' << s.issue << ',' << s.tweets << ','
       << optional_number(s.raw_min) << ',' << optional_number(s.raw_max) << '\n';
  }
  return os.str();
}

void Manifest::add(std::string key, std::string value) { entries.emplace_back(std::move(key), std::move(value)); }

std::optional<std::string> Manifest::get(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string Manifest::deterministic_text() const {
  std::ostringstream os;
  os << kManifestHeader << '\n';
  for (const auto& [k, v] : entries) os << k << " = " << v << '\n';
  os << "hash = " << hash << '\n';
  return os.str();
}

std::string Manifest::format() const {
  std::string out = deterministic_text();
  for (const auto& [stage, ms] : timings_ms) out += kTimingPrefix + stage + "_ms = " + format_fixed(ms, 3) + '\n';
  return out;
}

Manifest parse_manifest(std::istream& in) {
  Manifest m;
  for (auto& [key, value] : parse_key_values(in, "snapshot")) {
    if (key == "hash") {
      m.hash = value;
    } else if (key.rfind(kTimingPrefix, 0) == 0) {
      std::string stage = key.substr(std::char_traits<char>::length(kTimingPrefix));
      if (stage.size() > 3 && stage.ends_with("_ms")) stage.resize(stage.size() - 3);
      const auto ms = parse_double(value);
      if (!ms) throw Error("snapshot", "bad timing '" + value + "'");
      m.timings_ms.emplace_back(std::move(stage), *ms);
    } else {
      m.add(std::move(key), std::move(value));
    }
  }
  return m;
}

void sort_records(std::vector<fusion::ScoredTweet>& tweets) {
  std::stable_sort(tweets.begin(), tweets.end(), [](const auto& a, const auto& b) {
    if (a.tweet.created_at != b.tweet.created_at) return a.tweet.created_at < b.tweet.created_at;
    return a.tweet.id < b.tweet.id;
  });
}

StoreSnapshot::StoreSnapshot(std::uint64_t version, std::vector<fusion::ScoredTweet> tweets,
                             SnapshotArtifacts artifacts, Manifest manifest, PipelineConfig config)
    : version_(version),
      tweets_(std::move(tweets)),
      artifacts_(std::move(artifacts)),
      manifest_(std::move(manifest)),
      config_(std::move(config)) {
  sort_records(tweets_);
  scores_.reserve(tweets_.size());
  for (std::size_t i = 0; i < tweets_.size(); ++i) {
    if (!index_.emplace(tweets_[i].tweet.id, i).second) {
      throw Error("snapshot", "duplicate tweet id '" + tweets_[i].tweet.id + "'");
    }
    scores_.push_back(tweets_[i].scores);
  }
}

const fusion::ScoredTweet* StoreSnapshot::find(const std::string& id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? nullptr : &tweets_[it->second];
}

std::string snapshot_record(const fusion::ScoredTweet& s) {
  json doc;
  doc["tweet"] = json::parse(core::serialize_tweet(s.tweet));
  doc["scores"] = json{{"geo", s.scores.geo}, {"text", s.scores.text}, {"user", s.scores.user}, {"image", s.scores.image}};
  if (s.tags) {
    doc["tags"] = json{{"flooding", s.tags->flood}, {"windy", s.tags->wind}, {"destruction", s.tags->destruction}};
  } else {
    doc["tags"] = nullptr;
  }
  doc["passed"] = s.passed;
  return doc.dump();
}

fusion::ScoredTweet parse_snapshot_record(const std::string& line, const core::StudyWindow& study,
                                          std::size_t line_no) {
  try {
    const json doc = json::parse(line);
    auto parsed = core::parse_tweet_record(doc.at("tweet").dump(), study, line_no);
    if (auto* reject = std::get_if<core::RejectReport>(&parsed)) {
      throw ParseError("snapshot", line_no, std::string(core::reject_reason_name(reject->reason)) + ": " + reject->detail);
    }
    fusion::ScoredTweet out;
    out.tweet = std::get<core::TweetRecord>(std::move(parsed));
    const auto& sc = doc.at("scores");
    out.scores = {sc.at("geo").get<double>(), sc.at("text").get<double>(), sc.at("user").get<double>(),
                  sc.at("image").get<double>()};
    out.scores.validate();
    if (const auto& tags = doc.at("tags"); !tags.is_null()) {
      out.tags = image::TagProbabilities{tags.at("flooding").get<double>(), tags.at("windy").get<double>(),
                                         tags.at("destruction").get<double>()};
    }
    out.passed = doc.at("passed").get<bool>();
    return out;
  } catch (const json::exception& e) {
    throw ParseError("snapshot", line_no, e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("snapshot", line_no, e.what());
  }
}

std::string content_hash(const Manifest& manifest, std::span<const fusion::ScoredTweet> tweets) {
  std::uint64_t h = fnv1a(kManifestHeader);
  for (const auto& [k, v] : manifest.entries) h = fnv1a(k + " = " + v + "\n", h);
  for (const auto& t : tweets) h = fnv1a(snapshot_record(t) + "\n", h);
  return hex64(h);
}

void save_snapshot(const StoreSnapshot& snapshot, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("snapshot", "cannot create " + dir + ": " + ec.message());
  const fs::path root(dir);
  std::string records;
  for (const auto& t : snapshot.tweets()) records += snapshot_record(t) + '\n';
  std::ostringstream user_model;
  user::save_model(user_model, snapshot.artifacts().user);
  const auto& image = snapshot.artifacts().image;
  write_file((root / "tweets.ndjson").string(), records, "snapshot");
  write_file((root / "config.txt").string(), format_config(snapshot.config()), "snapshot");
  write_file((root / "geo_calibration.txt").string(), geo::format_calibration(snapshot.artifacts().geo), "snapshot");
  write_file((root / "text_segments.csv").string(), format_text_segments(snapshot.artifacts().text), "snapshot");
  write_file((root / "user_model.txt").string(), user_model.str(), "snapshot");
  write_file((root / "image_calibration.txt").string(),
             "scorer = " + image.scorer + "\ncalibration_min = " + format_exact(image.calibration_min) +
                 "\ncalibration_max = " + format_exact(image.calibration_max) + "\n",
             "snapshot");
  // Written last so a readable manifest implies a complete snapshot.
  write_file((root / "manifest.txt").string(), snapshot.manifest().format(), "snapshot");
}

StoreSnapshot load_snapshot(const std::string& dir) {
  const fs::path root(dir);
  if (!fs::is_regular_file(root / "manifest.txt")) {
    throw Error("snapshot", "no snapshot in " + dir + " (manifest.txt missing)");
  }
  auto manifest_in = open_in(root / "manifest.txt");
  Manifest manifest = parse_manifest(manifest_in);
  PipelineConfig config = load_config((root / "config.txt").string());

  std::vector<fusion::ScoredTweet> tweets;
  auto records = open_in(root / "tweets.ndjson");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(records, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    tweets.push_back(parse_snapshot_record(line, config.study, line_no));
  }

  SnapshotArtifacts artifacts;
  artifacts.geo = geo::load_calibration((root / "geo_calibration.txt").string());
  auto segments_in = open_in(root / "text_segments.csv");
  artifacts.text = parse_text_segments(segments_in);
  auto user_in = open_in(root / "user_model.txt");
  artifacts.user = user::load_model(user_in);
  auto image_in = open_in(root / "image_calibration.txt");
  artifacts.image = parse_image_calibration(image_in);

  const auto version_text = manifest.get("snapshot.version");
  const auto version = version_text ? parse_int(*version_text) : std::nullopt;
  if (!version || *version < 1) throw Error("snapshot", "manifest lacks a valid snapshot.version");
  StoreSnapshot snapshot(static_cast<std::uint64_t>(*version), std::move(tweets), std::move(artifacts),
                         std::move(manifest), std::move(config));
  if (content_hash(snapshot.manifest(), snapshot.tweets()) != snapshot.manifest().hash) {
    throw Error("snapshot", "content hash mismatch in " + dir);
  }
  return snapshot;
}

std::shared_ptr<const StoreSnapshot> SnapshotStore::current() const {
  std::lock_guard lock(mutex_);
  return current_;
}

void SnapshotStore::publish(std::shared_ptr<const StoreSnapshot> snapshot) {
  if (!snapshot) throw Error("snapshot", "cannot publish an empty snapshot");
  std::lock_guard lock(mutex_);
  if (current_ && snapshot->version() <= current_->version()) {
    throw Error("snapshot", "version " + std::to_string(snapshot->version()) + " is not newer than " +
                                std::to_string(current_->version()));
  }
  current_ = std::move(snapshot);
}

std::uint64_t SnapshotStore::next_version() const {
  std::lock_guard lock(mutex_);
  return current_ ? current_->version() + 1 : 1;
}

QueryPage query(const StoreSnapshot& snapshot, const fusion::ThresholdVector& thresholds, std::size_t page,
                std::size_t page_size) {
  if (page_size == 0 || page_size > kMaxPageSize) {
    throw Error("query", "page_size must be in 1.." + std::to_string(kMaxPageSize));
  }
  try {
    thresholds.validate();
  } catch (const Error& e) {
    throw Error("query", e.what());
  }
  QueryPage out;
  out.page = page;
  out.page_size = page_size;
  const std::size_t first = page <= SIZE_MAX / page_size ? page * page_size : SIZE_MAX;
  for (const auto& t : snapshot.tweets()) {
    if (!fusion::passes_thresholds(t.scores, thresholds)) continue;
    if (out.total >= first && out.records.size() < page_size) out.records.push_back(&t);
    ++out.total;
  }
  return out;
}

}  // namespace stormsift::service
