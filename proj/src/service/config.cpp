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


#include "stormsift/service/config.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"
#include "stormsift/core/time.hpp"
#include "stormsift/text/scoring.hpp"

namespace stormsift::service {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kKeys = {
    "study.start",      "study.end",       "tweets",         "sensors",
    "track",            "labels",          "image_scores",   "geo.power",
    "geo.d_min",        "geo.epsilon",     "geo.top_k",      "text.window",
    "text.dimension",   "text.min_count",  "text.negative",  "text.epochs",
    "text.learning_rate", "text.formula",  "text.seed_term", "text.segment_hours",
    "user.model",       "user.grid",       "image.gate",     "threshold.geo",
    "threshold.text",   "threshold.user",  "threshold.image", "bind.host",
    "bind.port",        "seed",            "threads",
};

double to_double(std::string_view key, std::string_view value) {
  const auto v = parse_double(value);
  if (!v) throw Error("config", std::string(key) + ": expected a number, got '" + std::string(value) + "'");
  return *v;
}

std::int64_t to_int(std::string_view key, std::string_view value, std::int64_t lo, std::int64_t hi) {
  const auto v = parse_int(value);
  if (!v || *v < lo || *v > hi) {
    throw Error("config", std::string(key) + ": expected an integer in " + std::to_string(lo) + ".." +
                              std::to_string(hi) + ", got '" + std::string(value) + "'");
  }
  return *v;
}

std::string resolve_path(std::string_view value, const std::string& base_dir) {
  if (value.empty()) return {};
  fs::path p{std::string(value)};
  if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
  return p.lexically_normal().string();
}

core::UtcSeconds to_time(std::string_view key, std::string_view value) {
  try {
    return core::parse_iso8601(value);
  } catch (const Error& e) {
    throw Error("config", std::string(key) + ": " + e.what());
  }
}

}  // namespace

void PipelineConfig::validate() const {
  if (study.end <= study.start) throw Error("config", "study.end must be after study.start");
  text.params.validate();
  if (text.seed_term.empty()) throw Error("config", "text.seed_term must not be empty");
  if (text.segment_hours != 1 && text.segment_hours != 24) {
    throw Error("config", "text.segment_hours must be 1 or 24");
  }
  if (!(geo.epsilon > 0.0)) throw Error("config", "geo.epsilon must be positive");
  if (!(geo.d_min_miles > 0.0)) throw Error("config", "geo.d_min must be positive");
  if (!(geo.idw_power > 0.0)) throw Error("config", "geo.power must be positive");
  if (geo.top_k == 0) throw Error("config", "geo.top_k must be positive");
  if (!(image_gate >= 0.0 && image_gate <= 1.0)) throw Error("config", "image.gate must be in [0, 1]");
  try {
    thresholds.validate();
  } catch (const Error& e) {
    throw Error("config", e.what());
  }
  if (bind_port < 0 || bind_port > 65535) throw Error("config", "bind.port must be in 0..65535");
  if (threads < 1) throw Error("config", "threads must be positive");
  for (const auto& [name, values] : user_grid) {
    if (values.empty()) throw Error("config", "user.grid: no values for '" + name + "'");
    try {
      user::resolve_hyperparams(user_kind, {{name, values.front()}});
    } catch (const Error& e) {
      throw Error("config", std::string("user.grid: ") + e.what());
    }
  }
}

void PipelineConfig::check_inputs() const {
  const std::pair<const char*, const std::string*> required[] = {
      {"tweets", &tweets_path}, {"sensors", &sensors_path}, {"track", &track_path}, {"labels", &labels_path}};
  for (const auto& [key, path] : required) {
    if (path->empty()) throw Error("config", std::string(key) + " path is not set");
    if (!fs::is_regular_file(*path)) throw Error("config", std::string(key) + " file not found: " + *path);
  }
  if (!image_scores_path.empty() && !fs::is_regular_file(image_scores_path)) {
    throw Error("config", "image_scores file not found: " + image_scores_path);
  }
}

void apply_setting(PipelineConfig& c, std::string_view key_in, std::string_view value_in,
                   const std::string& base_dir) {
  const std::string key = to_lower(trim(key_in));
  const std::string_view value = trim(value_in);
  constexpr auto kMaxInt = std::numeric_limits<int>::max();
  if (key == "study.start") c.study.start = to_time(key, value);
  else if (key == "study.end") c.study.end = to_time(key, value);
  else if (key == "tweets") c.tweets_path = resolve_path(value, base_dir);
  else if (key == "sensors") c.sensors_path = resolve_path(value, base_dir);
  else if (key == "track") c.track_path = resolve_path(value, base_dir);
  else if (key == "labels") c.labels_path = resolve_path(value, base_dir);
  else if (key == "image_scores") c.image_scores_path = resolve_path(value, base_dir);
  else if (key == "geo.power") c.geo.idw_power = to_double(key, value);
  else if (key == "geo.d_min") c.geo.d_min_miles = to_double(key, value);
  else if (key == "geo.epsilon") c.geo.epsilon = to_double(key, value);
  else if (key == "geo.top_k") c.geo.top_k = static_cast<std::size_t>(to_int(key, value, 1, 9));
  else if (key == "text.window") c.text.params.window_size = static_cast<int>(to_int(key, value, 0, kMaxInt));
  else if (key == "text.dimension") c.text.params.dimension = static_cast<int>(to_int(key, value, 0, kMaxInt));
  else if (key == "text.min_count") c.text.params.min_count = static_cast<int>(to_int(key, value, 0, kMaxInt));
  else if (key == "text.negative") c.text.params.negative_samples = static_cast<int>(to_int(key, value, 0, kMaxInt));
  else if (key == "text.epochs") c.text.params.epochs = static_cast<int>(to_int(key, value, 1, kMaxInt));
  else if (key == "text.learning_rate") c.text.params.learning_rate = to_double(key, value);
  else if (key == "text.formula") {
    try {
      c.text.formula = text::parse_formula(value);
    } catch (const Error& e) {
      throw Error("config", std::string("text.formula: ") + e.what());
    }
  } else if (key == "text.seed_term") c.text.seed_term = to_lower(value);
  else if (key == "text.segment_hours") c.text.segment_hours = static_cast<int>(to_int(key, value, 1, 24));
  else if (key == "user.model") {
    try {
      c.user_kind = user::parse_model_kind(value);
    } catch (const Error& e) {
      throw Error("config", std::string("user.model: ") + e.what());
    }
  } else if (key == "user.grid") c.user_grid = parse_grid(value);
  else if (key == "image.gate") c.image_gate = to_double(key, value);
  else if (key == "threshold.geo") c.thresholds.geo_min = to_double(key, value);
  else if (key == "threshold.text") c.thresholds.text_min = to_double(key, value);
  else if (key == "threshold.user") c.thresholds.user_min = to_double(key, value);
  else if (key == "threshold.image") c.thresholds.image_min = to_double(key, value);
  else if (key == "bind.host") c.bind_host = std::string(value);
  else if (key == "bind.port") c.bind_port = static_cast<int>(to_int(key, value, 0, 65535));
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_int(key, value, 0, std::numeric_limits<std::int64_t>::max()));
  else if (key == "threads") c.threads = static_cast<int>(to_int(key, value, 1, 256));
  else throw Error("config", "unknown key '" + key + "'");
}

std::vector<std::string> config_keys() { return kKeys; }

PipelineConfig parse_config(std::istream& in, const std::string& base_dir) {
  PipelineConfig config;
  for (const auto& [key, value] : parse_key_values(in, "config")) apply_setting(config, key, value, base_dir);
  return config;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config", "cannot open " + path);
  return parse_config(in, fs::absolute(path).parent_path().string());
}

std::vector<std::pair<std::string, std::string>> config_entries(const PipelineConfig& c) {
  const auto& p = c.text.params;
  return {
      {"study.start", core::format_iso8601(c.study.start)},
      {"study.end", core::format_iso8601(c.study.end)},
      {"tweets", c.tweets_path},
      {"sensors", c.sensors_path},
      {"track", c.track_path},
      {"labels", c.labels_path},
      {"image_scores", c.image_scores_path},
      {"geo.power", format_exact(c.geo.idw_power)},
      {"geo.d_min", format_exact(c.geo.d_min_miles)},
      {"geo.epsilon", format_exact(c.geo.epsilon)},
      {"geo.top_k", std::to_string(c.geo.top_k)},
      {"text.window", std::to_string(p.window_size)},
      {"text.dimension", std::to_string(p.dimension)},
      {"text.min_count", std::to_string(p.min_count)},
      {"text.negative", std::to_string(p.negative_samples)},
      {"text.epochs", std::to_string(p.epochs)},
      {"text.learning_rate", format_exact(p.learning_rate)},
      {"text.formula", text::formula_name(c.text.formula)},
      {"text.seed_term", c.text.seed_term},
      {"text.segment_hours", std::to_string(c.text.segment_hours)},
      {"user.model", user::model_kind_name(c.user_kind)},
      {"user.grid", format_grid(c.user_grid)},
      {"image.gate", format_exact(c.image_gate)},
      {"threshold.geo", format_exact(c.thresholds.geo_min)},
      {"threshold.text", format_exact(c.thresholds.text_min)},
      {"threshold.user", format_exact(c.thresholds.user_min)},
      {"threshold.image", format_exact(c.thresholds.image_min)},
      {"bind.host", c.bind_host},
      {"bind.port", std::to_string(c.bind_port)},
      {"seed", std::to_string(c.seed)},
      {"threads", std::to_string(c.threads)},
  };
}

std::string format_config(const PipelineConfig& config) {
  std::ostringstream os;
  for (const auto& [key, value] : config_entries(config)) os << key << " = " << value << '\n';
  return os.str();
}

user::GridSpec parse_grid(std::string_view text) {
  user::GridSpec grid;
  if (trim(text).empty()) return grid;
  for (const auto& part : split(text, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw Error("config", "user.grid: expected name=v1,v2 in '" + part + "'");
    const std::string name(trim(std::string_view(part).substr(0, eq)));
    if (name.empty()) throw Error("config", "user.grid: empty parameter name");
    std::vector<double> values;
    for (const auto& v : split(std::string_view(part).substr(eq + 1), ',')) {
      values.push_back(to_double("user.grid", trim(v)));
    }
    grid.emplace_back(name, std::move(values));
  }
  return grid;
}

std::string format_grid(const user::GridSpec& grid) {
  std::string out;
  for (const auto& [name, values] : grid) {
    if (!out.empty()) out += ';';
    out += name + '=';
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ',';
      out += format_exact(values[i]);
    }
  }
  return out;
}

}  // namespace stormsift::service
