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

#include "stormsift/core/csv_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/core/time.hpp"

namespace stormsift::core {
namespace {

constexpr const char* kStage = "ingest";

/// Iterates non-blank rows, skipping a leading header whose first cell
/// equals `header_key`.
template <typename Fn>
void for_each_row(std::istream& in, std::string_view header_key, std::size_t columns, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split(line, ',');
    if (first) {
      first = false;
      if (to_lower(trim(cells[0])) == header_key) continue;
    }
    if (cells.size() != columns) {
      throw ParseError(kStage, line_no, "expected " + std::to_string(columns) + " columns, got " +
                                            std::to_string(cells.size()));
    }
    for (auto& c : cells) c = std::string(trim(c));
    fn(line_no, cells);
  }
  if (in.bad()) throw Error(kStage, "read error");
}

double number(const std::string& cell, std::size_t line, const char* what) {
  const auto v = parse_double(cell);
  if (!v || !std::isfinite(*v)) throw ParseError(kStage, line, std::string("bad ") + what + " '" + cell + "'");
  return *v;
}

double non_negative(const std::string& cell, std::size_t line, const char* what) {
  const double v = number(cell, line, what);
  if (v < 0.0) throw ParseError(kStage, line, std::string(what) + " must be >= 0");
  return v;
}

GeoLocation location(const std::string& lat, const std::string& lon, std::size_t line) {
  const double la = number(lat, line, "lat");
  const double lo = number(lon, line, "lon");
  if (!GeoLocation::is_valid(la, lo)) throw ParseError(kStage, line, "location out of range");
  return GeoLocation(la, lo);
}

TimeWindow window(const std::string& iso, UtcSeconds study_start, std::size_t line) {
  try {
    return bucket_hourly(parse_iso8601(iso), study_start);
  } catch (const Error& e) {
    throw ParseError(kStage, line, e.what());
  }
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(kStage, "cannot open " + path);
  return in;
}

}  // namespace

std::vector<SensorReading> parse_sensor_csv(std::istream& in, UtcSeconds study_start) {
  std::vector<SensorReading> out;
  for_each_row(in, "station_id", 6, [&](std::size_t line, const std::vector<std::string>& c) {
    if (c[0].empty()) throw ParseError(kStage, line, "empty station_id");
    out.push_back(SensorReading{c[0], location(c[1], c[2], line), window(c[3], study_start, line),
                                non_negative(c[4], line, "wind_mph"),
                                non_negative(c[5], line, "precip_in")});
  });
  return out;
}

std::vector<SensorReading> load_sensor_csv(const std::string& path, UtcSeconds study_start) {
  auto in = open(path);
  return parse_sensor_csv(in, study_start);
}

std::vector<TrackPoint> parse_track_csv(std::istream& in, UtcSeconds study_start) {
  std::vector<TrackPoint> out;
  for_each_row(in, "window_start_iso", 6, [&](std::size_t line, const std::vector<std::string>& c) {
    TrackPoint p;
    p.window = window(c[0], study_start, line);
    p.eye = location(c[1], c[2], line);
    const auto cat = parse_int(c[3]);
    if (!cat || *cat < 0 || *cat > 5) throw ParseError(kStage, line, "category must be 0-5");
    p.category = static_cast<int>(*cat);
    p.pressure_mb = number(c[4], line, "pressure_mb");
    p.max_wind_mph = number(c[5], line, "max_wind_mph");
    if (p.pressure_mb <= 0.0) throw ParseError(kStage, line, "pressure_mb must be positive");
    if (p.max_wind_mph <= 0.0) throw ParseError(kStage, line, "max_wind_mph must be positive");
    if (!out.empty()) {
      const auto prev = out.back().window.index;
      if (p.window.index == prev) {
        throw ParseError(kStage, line, "duplicate window index " + std::to_string(prev));
      }
      if (p.window.index != prev + 1) {
        throw ParseError(kStage, line, "track windows not contiguous: " + std::to_string(prev) +
                                           " followed by " + std::to_string(p.window.index));
      }
    }
    out.push_back(p);
  });
  return out;
}

std::vector<TrackPoint> load_track_csv(const std::string& path, UtcSeconds study_start) {
  auto in = open(path);
  return parse_track_csv(in, study_start);
}

std::vector<LabelRecord> parse_labels_csv(std::istream& in) {
  std::vector<LabelRecord> out;
  for_each_row(in, "subject_id", 4, [&](std::size_t line, const std::vector<std::string>& c) {
    LabelRecord r;
    r.subject_id = c[0];
    r.rater_id = c[1];
    if (r.subject_id.empty()) throw ParseError(kStage, line, "empty subject_id");
    const auto related = parse_bool(c[2]);
    if (!related) throw ParseError(kStage, line, "related must be true/false");
    r.related = *related;
    if (!c[3].empty()) {
      for (const auto& name : split(c[3], ';')) {
        if (trim(name).empty()) continue;
        const auto tag = parse_tag(name);
        if (!tag) throw ParseError(kStage, line, "unknown tag '" + name + "'");
        if (!r.has_tag(*tag)) r.tags.push_back(*tag);
      }
    }
    if (!r.tags.empty() && !r.related) {
      throw ParseError(kStage, line, "tags present on a record marked not related");
    }
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<LabelRecord> load_labels(const std::string& path) {
  auto in = open(path);
  return parse_labels_csv(in);
}

std::string format_sensor_csv(const std::vector<SensorReading>& readings) {
  std::ostringstream os;
  os << "station_id,lat,lon,window_start_iso,wind_mph,precip_in\n";
  for (const auto& r : readings) {
    os << r.station_id << ',' << format_exact(r.location.latitude()) << ','
       << format_exact(r.location.longitude()) << ',' << format_iso8601(r.window.start) << ','
       << format_exact(r.wind_mph) << ',' << format_exact(r.precip_inches) << '\n';
  }
  return os.str();
}

std::string format_track_csv(const std::vector<TrackPoint>& track) {
  std::ostringstream os;
  os << "window_start_iso,lat,lon,category,pressure_mb,max_wind_mph\n";
  for (const auto& p : track) {
    os << format_iso8601(p.window.start) << ',' << format_exact(p.eye.latitude()) << ','
       << format_exact(p.eye.longitude()) << ',' << p.category << ','
       << format_exact(p.pressure_mb) << ',' << format_exact(p.max_wind_mph) << '\n';
  }
  return os.str();
}

std::string format_labels_csv(const std::vector<LabelRecord>& labels) {
  std::ostringstream os;
  os << "subject_id,rater_id,related,tags\n";
  for (const auto& r : labels) {
    os << r.subject_id << ',' << r.rater_id << ',' << (r.related ? "true" : "false") << ',';
    for (std::size_t i = 0; i < r.tags.size(); ++i) {
      if (i) os << ';';
      os << tag_name(r.tags[i]);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace stormsift::core
