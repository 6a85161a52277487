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

#include "stormsift/core/tweet_stream.hpp"

#include <fstream>
#include <istream>
#include <unordered_set>

#include <json.hpp>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/core/place.hpp"
#include "stormsift/core/time.hpp"

namespace stormsift::core {
namespace {

using nlohmann::json;

struct Reject {
  RejectReason reason;
  std::string detail;
};

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw Reject{RejectReason::Malformed, std::string("missing field '") + key + "'"};
  return obj.at(key);
}

std::string require_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (v.is_string()) return v.get<std::string>();
  // Twitter ids frequently arrive as integers.
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw Reject{RejectReason::Malformed, std::string("field '") + key + "' must be a string"};
}

std::int64_t require_count(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_number_integer()) {
    throw Reject{RejectReason::Malformed, std::string("field '") + key + "' must be an integer"};
  }
  const auto n = v.get<std::int64_t>();
  if (n < 0) throw Reject{RejectReason::InvalidAuthor, std::string("negative ") + key};
  return n;
}

UtcSeconds require_time(const json& obj, const char* key) {
  const std::string s = require_string(obj, key);
  try {
    return parse_iso8601(s);
  } catch (const Error& e) {
    throw Reject{RejectReason::Malformed, e.what()};
  }
}

GeoLocation parse_point(const json& p) {
  if (!p.is_object() || !p.contains("lat") || !p.contains("lon") || !p["lat"].is_number() ||
      !p["lon"].is_number()) {
    throw Reject{RejectReason::Malformed, "point needs numeric lat and lon"};
  }
  const double lat = p["lat"].get<double>();
  const double lon = p["lon"].get<double>();
  if (!GeoLocation::is_valid(lat, lon)) {
    throw Reject{RejectReason::InvalidLocation,
                 "location out of range (" + format_exact(lat) + ", " + format_exact(lon) + ")"};
  }
  return GeoLocation(lat, lon);
}

std::vector<std::string> string_list(const json& obj, const char* key) {
  std::vector<std::string> out;
  if (!obj.contains(key) || obj[key].is_null()) return out;
  const json& arr = obj[key];
  if (!arr.is_array()) throw Reject{RejectReason::Malformed, std::string("'") + key + "' must be an array"};
  for (const auto& v : arr) {
    if (!v.is_string()) throw Reject{RejectReason::Malformed, std::string("'") + key + "' entries must be strings"};
    out.push_back(v.get<std::string>());
  }
  return out;
}

TweetRecord parse_record(std::string_view line, const StudyWindow& study) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw Reject{RejectReason::Malformed, std::string("invalid JSON: ") + e.what()};
  }
  if (!doc.is_object()) throw Reject{RejectReason::Malformed, "record is not an object"};

  TweetRecord t;
  t.id = require_string(doc, "id");
  if (t.id.empty()) throw Reject{RejectReason::Malformed, "empty id"};
  t.created_at = require_time(doc, "created_at");

  const bool has_coords = doc.contains("coordinates") && !doc["coordinates"].is_null();
  const bool has_place = doc.contains("place") && !doc["place"].is_null();
  if (!has_coords && !has_place) throw Reject{RejectReason::NoLocation, "neither coordinates nor place"};

  if (has_place) {
    const json& verts = require(doc["place"], "vertices");
    if (!verts.is_array()) throw Reject{RejectReason::Malformed, "place.vertices must be an array"};
    PlaceGeometry geometry;
    for (const auto& v : verts) geometry.vertices.push_back(parse_point(v));
    try {
      geometry.validate();
    } catch (const Error& e) {
      throw Reject{RejectReason::InvalidLocation, e.what()};
    }
    t.place = std::move(geometry);
  }
  if (has_coords) {
    t.location = parse_point(doc["coordinates"]);
    t.location_kind = LocationKind::Coordinates;
  } else {
    t.location = place_centroid(*t.place);
    t.location_kind = LocationKind::PlaceCentroid;
  }

  if (!study.contains(t.created_at)) {
    throw Reject{RejectReason::OutsideStudyWindow,
                 "created_at " + format_iso8601(t.created_at) + " outside study window"};
  }

  const json& text = require(doc, "text");
  if (!text.is_string()) throw Reject{RejectReason::Malformed, "'text' must be a string"};
  t.text = text.get<std::string>();
  t.hashtags = string_list(doc, "hashtags");
  t.weblinks = string_list(doc, "urls");

  if (doc.contains("media") && !doc["media"].is_null()) {
    if (!doc["media"].is_array()) throw Reject{RejectReason::Malformed, "'media' must be an array"};
    for (const auto& m : doc["media"]) {
      MediaRef ref{require_string(m, "id"), m.contains("path") && m["path"].is_string()
                                                ? m["path"].get<std::string>()
                                                : std::string()};
      if (ref.media_id.empty()) throw Reject{RejectReason::Malformed, "empty media id"};
      t.media.push_back(std::move(ref));
    }
  }

  const json& user = require(doc, "user");
  t.author.user_id = require_string(user, "id");
  if (t.author.user_id.empty()) throw Reject{RejectReason::InvalidAuthor, "empty user id"};
  t.author.account_created_at = require_time(user, "created_at");
  t.author.friends_count = require_count(user, "friends_count");
  t.author.followers_count = require_count(user, "followers_count");
  t.author.statuses_count = require_count(user, "statuses_count");
  const json& verified = require(user, "verified");
  if (!verified.is_boolean()) throw Reject{RejectReason::Malformed, "'verified' must be a boolean"};
  t.author.verified = verified.get<bool>();
  if (t.author.account_created_at > t.created_at) {
    throw Reject{RejectReason::InvalidAuthor, "account created after the tweet"};
  }
  return t;
}

json point_json(const GeoLocation& p) { return json{{"lat", p.latitude()}, {"lon", p.longitude()}}; }

}  // namespace

const char* reject_reason_name(RejectReason reason) noexcept {
  switch (reason) {
    case RejectReason::Malformed: return "malformed";
    case RejectReason::NoLocation: return "no_location";
    case RejectReason::InvalidLocation: return "invalid_location";
    case RejectReason::OutsideStudyWindow: return "outside_study_window";
    case RejectReason::InvalidAuthor: return "invalid_author";
    case RejectReason::DuplicateId: return "duplicate_id";
  }
  return "unknown";
}

std::variant<TweetRecord, RejectReport> parse_tweet_record(std::string_view line,
                                                           const StudyWindow& study,
                                                           std::size_t record_no) {
  try {
    return parse_record(line, study);
  } catch (const Reject& r) {
    return RejectReport{record_no, r.reason, r.detail};
  } catch (const json::exception& e) {
    return RejectReport{record_no, RejectReason::Malformed, e.what()};
  }
}

TweetParseResult parse_tweet_stream(std::istream& source, const StudyWindow& study) {
  if (!source) throw Error("ingest", "tweet source is not readable");
  TweetParseResult result;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t record_no = 0;
  while (std::getline(source, line)) {
    if (trim(line).empty()) continue;
    ++record_no;
    auto parsed = parse_tweet_record(line, study, record_no);
    if (auto* rej = std::get_if<RejectReport>(&parsed)) {
      result.rejected.push_back(std::move(*rej));
      continue;
    }
    auto& tweet = std::get<TweetRecord>(parsed);
    if (!seen.insert(tweet.id).second) {
      result.rejected.push_back({record_no, RejectReason::DuplicateId, "duplicate id " + tweet.id});
      continue;
    }
    result.accepted.push_back(std::move(tweet));
  }
  if (source.bad()) throw Error("ingest", "read error in tweet source");
  return result;
}

TweetParseResult load_tweet_file(const std::string& path, const StudyWindow& study) {
  std::ifstream in(path);
  if (!in) throw Error("ingest", "cannot open tweet file " + path);
  return parse_tweet_stream(in, study);
}

std::string serialize_tweet(const TweetRecord& tweet) {
  json doc;
  doc["id"] = tweet.id;
  doc["created_at"] = format_iso8601(tweet.created_at);
  if (tweet.location_kind == LocationKind::Coordinates) doc["coordinates"] = point_json(tweet.location);
  if (tweet.place) {
    json verts = json::array();
    for (const auto& v : tweet.place->vertices) verts.push_back(point_json(v));
    doc["place"] = json{{"vertices", verts}};
  }
  doc["text"] = tweet.text;
  doc["hashtags"] = tweet.hashtags;
  doc["urls"] = tweet.weblinks;
  json media = json::array();
  for (const auto& m : tweet.media) media.push_back(json{{"id", m.media_id}, {"path", m.path}});
  doc["media"] = media;
  doc["user"] = json{{"id", tweet.author.user_id},
                     {"created_at", format_iso8601(tweet.author.account_created_at)},
                     {"friends_count", tweet.author.friends_count},
                     {"followers_count", tweet.author.followers_count},
                     {"statuses_count", tweet.author.statuses_count},
                     {"verified", tweet.author.verified}};
  return doc.dump();
}

}  // namespace stormsift::core
