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


#include "stormsift/service/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "stormsift/common/error.hpp"
#include "stormsift/common/random.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/core/csv_io.hpp"
#include "stormsift/core/time.hpp"
#include "stormsift/core/tweet_stream.hpp"
#include "stormsift/geo/interpolation.hpp"

namespace stormsift::service {

namespace {

constexpr const char* kStudyStart = "2017-09-09T00:00:00Z";

struct City {
  const char* id;
  double lat;
  double lon;
};

constexpr std::array<City, 10> kCities = {{
    {"KEYW", 24.55, -81.78}, {"MIAM", 25.79, -80.29}, {"NAPL", 26.15, -81.78}, {"FMYR", 26.59, -81.86},
    {"PBIA", 26.68, -80.10}, {"TAMP", 27.96, -82.54}, {"ORLA", 28.43, -81.31}, {"GNVL", 29.69, -82.27},
    {"TLHS", 30.39, -84.35}, {"JAXF", 30.49, -81.69},
}};

constexpr double kSouth = 24.5;
constexpr double kNorth = 31.0;
constexpr double kWest = -87.5;
constexpr double kEast = -80.0;

const std::vector<std::string> kStormWords = {
    "hurricane", "storm",   "flooding", "flood",  "wind",     "winds",  "surge",  "evacuate",
    "evacuation", "shelter", "power",   "outage", "rain",     "damage", "landfall", "category",
    "gusts",     "debris",  "trees",    "roof",   "emergency", "water", "generator", "sandbags",
};

const std::vector<std::string> kChatterWords = {
    "coffee", "game",    "tonight", "friends", "weekend", "music",  "pizza",  "movie",
    "school", "work",    "beach",   "dinner",  "happy",   "birthday", "traffic", "gym",
    "dog",    "sunset",  "shopping", "football", "concert", "lunch", "family", "vacation",
};

double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

const std::string& pick(const std::vector<std::string>& words, Rng& rng) {
  return words[rng.below(words.size())];
}

std::string zero_pad(std::size_t n, int width) {
  std::string s = std::to_string(n);
  if (static_cast<int>(s.size()) < width) s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  return s;
}

core::GeoLocation eye_at(std::size_t hour, std::size_t hours) {
  const double f = hours > 1 ? static_cast<double>(hour) / static_cast<double>(hours - 1) : 0.0;
  const double lat = 23.6 + 7.6 * f;
  const double lon = -80.9 - 2.2 * f - 0.6 * std::sin(3.14159265358979 * f);
  return {round_to(lat, 4), round_to(lon, 4)};
}

std::string compose_text(std::vector<std::string> words, Rng& rng) {
  rng.shuffle(std::span<std::string>(words));
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  const double r = rng.uniform();
  if (r < 0.3) out += '!';
  else if (r < 0.5) out += '.';
  return out;
}

core::UserProfile draw_author(std::size_t index, bool verified, core::UtcSeconds study_start, Rng& rng) {
  core::UserProfile u;
  u.user_id = "u" + zero_pad(index, 4);
  u.verified = verified;
  const double age_days = verified ? 700.0 + rng.uniform() * 2500.0 : 5.0 + rng.exponential(1.0 / 900.0);
  u.account_created_at = study_start - static_cast<core::UtcSeconds>(age_days * core::kSecondsPerDay);
  u.followers_count = static_cast<std::int64_t>(verified ? rng.lognormal(10.2, 1.0) : rng.lognormal(5.6, 1.4));
  u.friends_count = static_cast<std::int64_t>(verified ? rng.lognormal(6.0, 1.0) : rng.lognormal(5.8, 1.1));
  const double per_day = verified ? rng.lognormal(2.3, 0.6) : rng.lognormal(1.0, 1.1);
  u.statuses_count = static_cast<std::int64_t>(per_day * std::max(age_days, 1.0));
  return u;
}

image::ImageScores draw_image_scores(bool related, Rng& rng) {
  image::ImageScores s;
  const double u = rng.uniform();
  s.p_related = round_to(related ? 0.45 + 0.55 * std::sqrt(u) : 0.001 + 0.6 * u * u, 4);
  if (s.p_related >= 0.5) {
    s.tags = image::TagProbabilities{round_to(rng.uniform(), 4), round_to(rng.uniform(), 4),
                                     round_to(rng.uniform(), 4)};
  }
  return s;
}

}  // namespace

Scenario generate_scenario(const ScenarioOptions& o) {
  if (o.tweets == 0 || o.hours == 0 || o.stations == 0 || o.authors == 0 || o.raters == 0) {
    throw Error("scenario", "tweets, hours, stations, authors and raters must be positive");
  }
  Rng rng(o.seed);
  Scenario sc;
  sc.study.start = core::parse_iso8601(kStudyStart);
  sc.study.end = sc.study.start + static_cast<core::UtcSeconds>(o.hours) * core::kSecondsPerHour - 1;

  std::vector<core::GeoLocation> eyes;
  for (std::size_t h = 0; h < o.hours; ++h) {
    const double f = o.hours > 1 ? static_cast<double>(h) / static_cast<double>(o.hours - 1) : 0.0;
    core::TrackPoint p;
    p.window = core::window_at(static_cast<std::int64_t>(h), sc.study.start);
    p.eye = eye_at(h, o.hours);
    p.category = std::max(1, 4 - static_cast<int>(f * 3.999));
    p.max_wind_mph = round_to(130.0 - 70.0 * f, 1);
    p.pressure_mb = round_to(929.0 + 56.0 * f, 1);
    eyes.push_back(p.eye);
    sc.track.push_back(p);
  }

  std::vector<City> stations(kCities.begin(), kCities.end());
  stations.resize(std::min(o.stations, kCities.size()));
  for (std::size_t i = stations.size(); i < o.stations; ++i) {
    stations.push_back({nullptr, round_to(rng.uniform(kSouth, kNorth), 2), round_to(rng.uniform(kWest, kEast), 2)});
  }
  for (std::size_t h = 0; h < o.hours; ++h) {
    for (std::size_t s = 0; s < stations.size(); ++s) {
      const core::GeoLocation loc(stations[s].lat, stations[s].lon);
      const double d = geo::great_circle_miles(loc, eyes[h]);
      core::SensorReading r;
      r.station_id = stations[s].id ? stations[s].id : "ST" + zero_pad(s, 2);
      r.location = loc;
      r.window = core::window_at(static_cast<std::int64_t>(h), sc.study.start);
      r.wind_mph = round_to(3.0 + sc.track[h].max_wind_mph * std::exp(-d / 110.0) * rng.lognormal(0.0, 0.15), 1);
      r.precip_inches = round_to(0.005 + 2.5 * std::exp(-d / 80.0) * rng.lognormal(0.0, 0.5), 3);
      sc.sensors.push_back(std::move(r));
    }
  }

  std::vector<core::UserProfile> authors;
  for (std::size_t i = 0; i < o.authors; ++i) {
    authors.push_back(draw_author(i + 1, rng.bernoulli(o.verified_share), sc.study.start, rng));
  }

  std::vector<std::vector<core::Tag>> truth_tags;
  for (std::size_t i = 0; i < o.tweets; ++i) {
    const bool related = rng.bernoulli(o.related_share);
    core::TweetRecord t;
    t.id = "t" + zero_pad(i + 1, 5);
    const auto hour = rng.below(o.hours);
    t.created_at = sc.study.start + static_cast<core::UtcSeconds>(hour) * core::kSecondsPerHour +
                   static_cast<core::UtcSeconds>(rng.below(core::kSecondsPerHour));
    t.author = authors[rng.below(authors.size())];
    if (t.author.account_created_at > t.created_at) t.author.account_created_at = t.created_at;

    double lat = 0.0;
    double lon = 0.0;
    if (related) {
      lat = eyes[hour].latitude() + rng.normal(0.0, 0.6);
      lon = eyes[hour].longitude() + rng.normal(0.0, 0.6);
    } else {
      lat = rng.uniform(kSouth, kNorth);
      lon = rng.uniform(kWest, kEast);
    }
    lat = round_to(std::clamp(lat, kSouth, kNorth), 4);
    lon = round_to(std::clamp(lon, kWest, kEast), 4);
    if (rng.bernoulli(0.15)) {
      const double half = 0.05;
      t.location_kind = core::LocationKind::PlaceCentroid;
      const core::GeoLocation sw(round_to(lat - half, 4), round_to(lon - half, 4));
      const core::GeoLocation ne(round_to(lat + half, 4), round_to(lon + half, 4));
      t.place = core::PlaceGeometry{{sw, ne}};
      t.location = core::GeoLocation((sw.latitude() + ne.latitude()) / 2.0, (sw.longitude() + ne.longitude()) / 2.0);
    } else {
      t.location = core::GeoLocation(lat, lon);
    }

    std::vector<std::string> words;
    if (related) {
      if (rng.bernoulli(0.6)) words.emplace_back("irma");
      const auto topic = 3 + rng.below(5);
      for (std::size_t k = 0; k < topic; ++k) words.push_back(pick(kStormWords, rng));
      const auto chatter = 1 + rng.below(3);
      for (std::size_t k = 0; k < chatter; ++k) words.push_back(pick(kChatterWords, rng));
      if (rng.bernoulli(0.5)) t.hashtags.emplace_back(rng.bernoulli(0.5) ? "irma" : "hurricaneirma");
    } else {
      const auto chatter = 3 + rng.below(5);
      for (std::size_t k = 0; k < chatter; ++k) words.push_back(pick(kChatterWords, rng));
      if (rng.bernoulli(0.1)) words.push_back(pick(kStormWords, rng));
      if (rng.bernoulli(0.2)) t.hashtags.emplace_back(pick(kChatterWords, rng));
    }
    t.text = compose_text(std::move(words), rng);
    for (const auto& h : t.hashtags) t.text += " #" + h;
    if (rng.bernoulli(t.author.verified ? 0.6 : 0.15)) {
      t.weblinks.push_back("https://t.co/" + hex64(rng.next()).substr(0, 10));
      t.text += " " + t.weblinks.back();
    }
    if (rng.bernoulli(related ? 0.4 : 0.15)) {
      core::MediaRef m{"m" + zero_pad(i + 1, 5), "media/m" + zero_pad(i + 1, 5) + ".jpg"};
      sc.image_scores.emplace(m.media_id, draw_image_scores(related, rng));
      t.media.push_back(std::move(m));
    }

    std::vector<core::Tag> tags;
    if (related) {
      for (auto tag : core::kAllTags) {
        if (rng.bernoulli(0.5)) tags.push_back(tag);
      }
      sc.related.insert(t.id);
    }
    truth_tags.push_back(std::move(tags));
    sc.tweets.push_back(std::move(t));
  }

  for (std::size_t i = 0; i < sc.tweets.size(); ++i) {
    if (!rng.bernoulli(o.labeled_share)) continue;
    const bool truth = sc.related.contains(sc.tweets[i].id);
    for (std::size_t r = 0; r < o.raters; ++r) {
      core::LabelRecord l;
      l.subject_id = sc.tweets[i].id;
      l.rater_id = "r" + std::to_string(r + 1);
      l.related = rng.bernoulli(0.9) ? truth : !truth;
      if (l.related) {
        for (auto tag : truth_tags[i]) {
          if (rng.bernoulli(0.85)) l.tags.push_back(tag);
        }
      }
      sc.labels.push_back(std::move(l));
    }
  }
  return sc;
}

std::string scenario_config_text(const Scenario& sc, std::uint64_t pipeline_seed) {
  std::ostringstream os;
  os << "# Synthetic hurricane scenario\n"
     << "study.start = " << core::format_iso8601(sc.study.start) << '\n'
     << "study.end = " << core::format_iso8601(sc.study.end) << '\n'
     << "tweets = tweets.ndjson\n"
     << "sensors = sensors.csv\n"
     << "track = track.csv\n"
     << "labels = labels.csv\n"
     << "image_scores = image_scores.csv\n"
     << "\n"
     << "text.window = 3\n"
     << "text.dimension = 50\n"
     << "text.min_count = 2\n"
     << "text.negative = 5\n"
     << "text.epochs = 5\n"
     << "text.formula = dp\n"
     << "text.seed_term = irma\n"
     << "text.segment_hours = 24\n"
     << "\n"
     << "user.model = rf\n"
     << "user.grid = n_trees=50;max_depth=6,10\n"
     << "\n"
     << "threshold.geo = 50\n"
     << "threshold.text = 30\n"
     << "threshold.user = 85\n"
     << "threshold.image = 85\n"
     << "\n"
     << "seed = " << pipeline_seed << '\n';
  return os.str();
}

void write_scenario(const Scenario& sc, const std::string& dir, std::uint64_t pipeline_seed) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("scenario", "cannot create " + dir + ": " + ec.message());
  const std::filesystem::path root(dir);
  std::string tweets;
  for (const auto& t : sc.tweets) tweets += core::serialize_tweet(t) + '\n';
  std::ostringstream images;
  image::write_precomputed_scores(images, sc.image_scores);
  std::string truth = "tweet_id,related\n";
  for (const auto& t : sc.tweets) truth += t.id + (sc.related.contains(t.id) ? ",true\n" : ",false\n");
  write_file((root / "tweets.ndjson").string(), tweets, "scenario");
  write_file((root / "sensors.csv").string(), core::format_sensor_csv(sc.sensors), "scenario");
  write_file((root / "track.csv").string(), core::format_track_csv(sc.track), "scenario");
  write_file((root / "labels.csv").string(), core::format_labels_csv(sc.labels), "scenario");
  write_file((root / "image_scores.csv").string(), images.str(), "scenario");
  write_file((root / "truth.csv").string(), truth, "scenario");
  write_file((root / "scenario.conf").string(), scenario_config_text(sc, pipeline_seed), "scenario");
}

}  // namespace stormsift::service
