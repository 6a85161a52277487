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


#include "stormsift/service/server.hpp"

#include <cmath>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/core/time.hpp"

namespace stormsift::service {

namespace {

using json = nlohmann::json;

ApiResponse error_response(int status, const std::string& message) {
  return {status, json{{"error", message}}.dump()};
}

json scores_object(const fusion::ScoreVector& s) {
  return json{{"geo", round_score(s.geo)},
              {"text", round_score(s.text)},
              {"user", round_score(s.user)},
              {"image", round_score(s.image)}};
}

json tags_object(const std::optional<image::TagProbabilities>& tags) {
  if (!tags) return nullptr;
  return json{{"flooding", round_score(tags->flood)},
              {"windy", round_score(tags->wind)},
              {"destruction", round_score(tags->destruction)}};
}

json thresholds_object(const fusion::ThresholdVector& t) {
  return json{{"geo_min", round_score(t.geo_min)},
              {"text_min", round_score(t.text_min)},
              {"user_min", round_score(t.user_min)},
              {"image_min", round_score(t.image_min)}};
}

const char* location_kind_name(core::LocationKind kind) {
  return kind == core::LocationKind::Coordinates ? "coordinates" : "place_centroid";
}

json summary_record(const fusion::ScoredTweet& s) {
  const auto& t = s.tweet;
  return json{{"id", t.id},
              {"created_at", core::format_iso8601(t.created_at)},
              {"lat", t.location.latitude()},
              {"lon", t.location.longitude()},
              {"location_kind", location_kind_name(t.location_kind)},
              {"text", t.text},
              {"has_media", !t.media.empty()},
              {"scores", scores_object(s.scores)}};
}

std::optional<std::string> param(const std::map<std::string, std::string>& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

double threshold_param(const std::map<std::string, std::string>& params, const std::string& key) {
  const auto raw = param(params, key);
  if (!raw) return 0.0;
  const auto v = parse_double(*raw);
  if (!v) throw Error("query", key + ": expected a number, got '" + *raw + "'");
  return *v;
}

std::size_t count_param(const std::map<std::string, std::string>& params, const std::string& key,
                        std::size_t fallback) {
  const auto raw = param(params, key);
  if (!raw) return fallback;
  const auto v = parse_int(*raw);
  if (!v || *v < 0) throw Error("query", key + ": expected a non-negative integer, got '" + *raw + "'");
  return static_cast<std::size_t>(*v);
}

ApiResponse meta(const StoreSnapshot& snap) {
  const auto& a = snap.artifacts();
  const auto& cfg = snap.config();
  std::size_t passed = 0;
  for (const auto& s : snap.scores()) passed += fusion::passes_thresholds(s, cfg.thresholds) ? 1 : 0;
  std::size_t flagged = 0;
  for (const auto& seg : a.text) flagged += seg.issue == "none" ? 0 : 1;
  json doc{{"version", snap.version()},
           {"tweets", snap.size()},
           {"hash", snap.manifest().hash},
           {"study_start", core::format_iso8601(cfg.study.start)},
           {"study_end", core::format_iso8601(cfg.study.end)},
           {"default_thresholds", thresholds_object(cfg.thresholds)},
           {"passed_at_defaults", passed},
           {"calibration",
            {{"geo",
              {{"function", geo::geo_function_name(a.geo.function)},
               {"transform", geo::transform_name(a.geo.transform)},
               {"lambda", a.geo.lambda},
               {"train_min", a.geo.train_min},
               {"train_max", a.geo.train_max}}},
             {"text",
              {{"formula", text::formula_name(cfg.text.formula)},
               {"seed_term", cfg.text.seed_term},
               {"segments", a.text.size()},
               {"segments_flagged", flagged}}},
             {"user",
              {{"model", user::model_kind_name(a.user.kind)},
               {"calibration_min", a.user.calibration_min},
               {"calibration_max", a.user.calibration_max}}},
             {"image",
              {{"scorer", a.image.scorer},
               {"calibration_min", a.image.calibration_min},
               {"calibration_max", a.image.calibration_max}}}}}};
  return {200, doc.dump()};
}

ApiResponse tweets(const StoreSnapshot& snap, const std::map<std::string, std::string>& params) {
  fusion::ThresholdVector t;
  t.geo_min = threshold_param(params, "geo_min");
  t.text_min = threshold_param(params, "text_min");
  t.user_min = threshold_param(params, "user_min");
  t.image_min = threshold_param(params, "image_min");
  const auto page = query(snap, t, count_param(params, "page", 0), count_param(params, "page_size", kDefaultPageSize));
  json records = json::array();
  for (const auto* r : page.records) records.push_back(summary_record(*r));
  json doc{{"version", snap.version()},
           {"total", page.total},
           {"page", page.page},
           {"page_size", page.page_size},
           {"thresholds", thresholds_object(t)},
           {"records", std::move(records)}};
  return {200, doc.dump()};
}

ApiResponse cdf(const StoreSnapshot& snap, const std::map<std::string, std::string>& params) {
  const auto axis_text = param(params, "axis");
  if (!axis_text) return error_response(400, "axis is required (geo, text, user or image)");
  const auto axis = fusion::parse_axis(*axis_text);
  const auto thresholds = fusion::default_cdf_thresholds();
  json points = json::array();
  for (const auto& p : fusion::cdf_pass_rate(snap.scores(), axis, thresholds)) {
    points.push_back(json{{"threshold", round_score(p.threshold)}, {"fraction", p.fraction}});
  }
  return {200, json{{"version", snap.version()}, {"axis", fusion::axis_name(axis)}, {"points", std::move(points)}}.dump()};
}

ApiResponse detail(const StoreSnapshot& snap, const std::string& id, const MapProvider& maps) {
  const auto* s = snap.find(id);
  if (!s) return error_response(404, "unknown tweet id '" + id + "'");
  const auto& t = s->tweet;
  json doc = summary_record(*s);
  doc["version"] = snap.version();
  doc["hashtags"] = t.hashtags;
  doc["urls"] = t.weblinks;
  json media = json::array();
  for (const auto& m : t.media) media.push_back(json{{"id", m.media_id}, {"path", m.path}});
  doc["media"] = std::move(media);
  doc["author"] = json{{"id", t.author.user_id},
                       {"created_at", core::format_iso8601(t.author.account_created_at)},
                       {"friends_count", t.author.friends_count},
                       {"followers_count", t.author.followers_count},
                       {"statuses_count", t.author.statuses_count},
                       {"verified", t.author.verified}};
  doc["tags"] = tags_object(s->tags);
  doc["passed_at_defaults"] = fusion::passes_thresholds(s->scores, snap.config().thresholds);
  const auto ctx = maps.context(t.location.latitude(), t.location.longitude());
  doc["map"] = json{{"address", ctx.address},
                    {"tile", ctx.tile},
                    {"street_view", ctx.street_view ? json(*ctx.street_view) : json(nullptr)}};
  return {200, doc.dump()};
}

ApiResponse config_response(const StoreSnapshot& snap) {
  json doc = json::object();
  for (const auto& [k, v] : config_entries(snap.config())) doc[k] = v;
  return {200, json{{"version", snap.version()}, {"config", std::move(doc)}}.dump()};
}

}  // namespace

double round_score(double value) noexcept { return std::round(value * 100.0) / 100.0; }

ApiResponse ApiHandler::get(const std::string& path, const std::map<std::string, std::string>& params) const {
  const auto snap = store_.current();
  if (!snap) return error_response(503, "no snapshot published");
  try {
    if (path == "/snapshot/meta") return meta(*snap);
    if (path == "/tweets") return tweets(*snap, params);
    if (path == "/cdf") return cdf(*snap, params);
    if (path == "/config") return config_response(*snap);
    constexpr std::string_view kTweetPrefix = "/tweet/";
    if (path.starts_with(kTweetPrefix) && path.size() > kTweetPrefix.size()) {
      return detail(*snap, path.substr(kTweetPrefix.size()), maps_);
    }
  } catch (const Error& e) {
    return error_response(400, e.what());
  }
  return error_response(404, "no route for " + path);
}

struct ApiServer::Impl {
  Impl(const SnapshotStore& store, const MapProvider& maps) : handler(store, maps) {
    server.Get(R"(/.*)", [this](const httplib::Request& req, httplib::Response& res) {
      std::map<std::string, std::string> params;
      for (const auto& [k, v] : req.params) params.emplace(k, v);
      const auto out = handler.get(req.path, params);
      res.status = out.status;
      res.set_content(out.body, "application/json");
    });
  }

  ApiHandler handler;
  httplib::Server server;
  std::thread worker;
};

ApiServer::ApiServer(const SnapshotStore& store, const MapProvider& maps)
    : impl_(std::make_unique<Impl>(store, maps)) {}

ApiServer::~ApiServer() { stop(); }

int ApiServer::start(const std::string& host, int port) {
  int actual = port;
  if (port == 0) {
    actual = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    actual = -1;
  }
  if (actual < 0) throw Error("serve", "cannot bind " + host + ":" + std::to_string(port));
  impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return actual;
}

void ApiServer::run(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) throw Error("serve", "cannot listen on " + host + ":" + std::to_string(port));
}

void ApiServer::stop() {
  impl_->server.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace stormsift::service
