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

#include "stormsift/image/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"

namespace stormsift::image {

namespace {

double parse_probability(const std::string& field, const char* column, std::size_t line) {
  const auto v = parse_double(trim(field));
  if (!v) throw ParseError("image", line, std::string("bad ") + column + " '" + field + "'");
  if (!(*v >= 0.0 && *v <= 1.0)) {
    throw ParseError("image", line, std::string(column) + " " + field + " is outside [0, 1]");
  }
  return *v;
}

}  // namespace

std::map<std::string, ImageScores> parse_precomputed_scores(std::istream& in, double gate) {
  std::map<std::string, ImageScores> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    if (line_no == 1 && trim(fields[0]) == "media_id") continue;
    if (fields.size() != 2 && fields.size() != 5) {
      throw ParseError("image", line_no, "expected media_id,p_related,p_flood,p_wind,p_destruction");
    }
    const std::string id(trim(fields[0]));
    if (id.empty()) throw ParseError("image", line_no, "empty media_id");
    ImageScores s;
    s.source = ScoreSource::Precomputed;
    s.p_related = parse_probability(fields[1], "p_related", line_no);
    const bool has_stage2 = fields.size() == 5 && !(trim(fields[2]).empty() && trim(fields[3]).empty() &&
                                                    trim(fields[4]).empty());
    if (s.p_related >= gate) {
      if (!has_stage2) throw ParseError("image", line_no, "stage-2 probabilities required when p_related >= gate");
      s.tags = TagProbabilities{parse_probability(fields[2], "p_flood", line_no),
                                parse_probability(fields[3], "p_wind", line_no),
                                parse_probability(fields[4], "p_destruction", line_no)};
    } else if (has_stage2) {
      for (std::size_t k = 2; k < 5; ++k) {
        if (!trim(fields[k]).empty()) parse_probability(fields[k], "stage-2 probability", line_no);
      }
    }
    if (!out.emplace(id, s).second) throw ParseError("image", line_no, "duplicate media_id '" + id + "'");
  }
  return out;
}

std::map<std::string, ImageScores> load_precomputed_scores(const std::string& path, double gate) {
  std::istringstream in(read_file(path, "image"));
  return parse_precomputed_scores(in, gate);
}

void write_precomputed_scores(std::ostream& out, const std::map<std::string, ImageScores>& scores) {
  out << "media_id,p_related,p_flood,p_wind,p_destruction\n";
  for (const auto& [id, s] : scores) {
    out << id << ',' << format_exact(s.p_related);
    if (s.tags) {
      out << ',' << format_exact(s.tags->flood) << ',' << format_exact(s.tags->wind) << ','
          << format_exact(s.tags->destruction);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
}

PrecomputedScorer::PrecomputedScorer(std::map<std::string, ImageScores> table) : table_(std::move(table)) {
  bool first = true;
  for (const auto& [id, s] : table_) {
    const double l = std::log(std::clamp(s.p_related, kProbabilityFloor, 1.0));
    min_ = first ? l : std::min(min_, l);
    max_ = first ? l : std::max(max_, l);
    first = false;
  }
}

ImageScores PrecomputedScorer::score(const core::MediaRef& media) const {
  const auto it = table_.find(media.media_id);
  if (it == table_.end()) throw Error("image", "no precomputed scores for media '" + media.media_id + "'");
  return it->second;
}

double rescale_probability(double p_related, double calibration_min, double calibration_max) {
  const double l = std::log(std::clamp(p_related, kProbabilityFloor, 1.0));
  const double range = calibration_max - calibration_min;
  if (!(range > 0.0)) return 50.0;
  return std::clamp(100.0 * (l - calibration_min) / range, 0.0, 100.0);
}

ImageResult image_score(std::span<const core::MediaRef> media, const ImageScorer& scorer) {
  ImageResult result;
  for (const auto& m : media) {
    const auto s = scorer.score(m);
    const double v = rescale_probability(s.p_related, scorer.calibration_min(), scorer.calibration_max());
    if (!result.media_id || v > result.score) {
      result.score = v;
      result.tags = s.tags;
      result.media_id = m.media_id;
    }
  }
  return result;
}

}  // namespace stormsift::image
