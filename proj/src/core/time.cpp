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

#include "stormsift/core/time.hpp"

#include <chrono>
#include <cstdio>

#include "stormsift/common/error.hpp"

namespace stormsift::core {
namespace {

int digits(std::string_view s, std::size_t pos, std::size_t count) {
  if (pos + count > s.size()) return -1;
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    const char c = s[i];
    if (c < '0' || c > '9') return -1;
    value = value * 10 + (c - '0');
  }
  return value;
}

[[noreturn]] void bad_time(std::string_view text) {
  throw Error("ingest", "invalid ISO-8601 timestamp '" + std::string(text) + "'");
}

}  // namespace

UtcSeconds parse_iso8601(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SS
  const int year = digits(text, 0, 4);
  const int month = digits(text, 5, 2);
  const int day = digits(text, 8, 2);
  const int hour = digits(text, 11, 2);
  const int minute = digits(text, 14, 2);
  const int second = digits(text, 17, 2);
  if (year < 0 || month < 0 || day < 0 || hour < 0 || minute < 0 || second < 0) bad_time(text);
  if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') ||
      text[13] != ':' || text[16] != ':') {
    bad_time(text);
  }
  if (hour > 23 || minute > 59 || second > 60) bad_time(text);

  const std::chrono::year_month_day ymd{std::chrono::year{year},
                                        std::chrono::month{static_cast<unsigned>(month)},
                                        std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) bad_time(text);

  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t frac_start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == frac_start) bad_time(text);
  }

  std::int64_t offset = 0;
  if (pos < text.size()) {
    const char sign = text[pos];
    if (sign == 'Z' || sign == 'z') {
      ++pos;
    } else if (sign == '+' || sign == '-') {
      const int oh = digits(text, pos + 1, 2);
      std::size_t mpos = pos + 3;
      if (mpos < text.size() && text[mpos] == ':') ++mpos;
      const int om = digits(text, mpos, 2);
      if (oh < 0 || om < 0 || oh > 23 || om > 59) bad_time(text);
      offset = (sign == '+' ? 1 : -1) * (oh * kSecondsPerHour + om * 60);
      pos = mpos + 2;
    } else {
      bad_time(text);
    }
  }
  if (pos != text.size()) bad_time(text);

  const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
  return static_cast<UtcSeconds>(days) * kSecondsPerDay + hour * kSecondsPerHour + minute * 60 +
         second - offset;
}

std::string format_iso8601(UtcSeconds t) {
  std::int64_t days = t / kSecondsPerDay;
  std::int64_t rem = t % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  const std::chrono::year_month_day ymd{
      std::chrono::sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(rem / kSecondsPerHour),
                static_cast<int>((rem % kSecondsPerHour) / 60), static_cast<int>(rem % 60));
  return buf;
}

TimeWindow bucket_hourly(UtcSeconds t, UtcSeconds study_start) {
  if (t < study_start) {
    throw Error("ingest", "timestamp " + format_iso8601(t) + " precedes study start " +
                              format_iso8601(study_start));
  }
  return window_at((t - study_start) / kSecondsPerHour, study_start);
}

TimeWindow window_at(std::int64_t index, UtcSeconds study_start) noexcept {
  return TimeWindow{index, study_start + index * kSecondsPerHour};
}

}  // namespace stormsift::core
