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

#pragma once

#include <string>
#include <string_view>

#include "stormsift/core/types.hpp"

namespace stormsift::core {

/// Parses ISO-8601 date-times ("2017-09-10T12:00:00Z", optional fractional
/// seconds, "Z" or a "+hh:mm" / "-hhmm" offset; a bare date-time is read as
/// UTC) and normalizes to UTC seconds. Throws stormsift::Error on bad input.
UtcSeconds parse_iso8601(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(UtcSeconds t);

/// Hourly window containing `t`: index = floor((t - study_start) / 3600).
/// Throws when t precedes the study start.
TimeWindow bucket_hourly(UtcSeconds t, UtcSeconds study_start);

/// Window with the given index relative to `study_start`.
TimeWindow window_at(std::int64_t index, UtcSeconds study_start) noexcept;

}  // namespace stormsift::core
