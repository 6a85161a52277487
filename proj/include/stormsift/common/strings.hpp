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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stormsift {

std::string_view trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char delim);

std::string to_lower(std::string_view s);

/// Strict numeric parsing; nullopt on trailing garbage or overflow.
std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);
std::optional<bool> parse_bool(std::string_view s);

/// Fixed-point rendering, e.g. format_fixed(12.345, 2) == "12.35".
std::string format_fixed(double value, int decimals);

/// Shortest text that parses back to the identical double.
std::string format_exact(double value);

/// 64-bit FNV-1a, stable across platforms and runs.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

std::string hex64(std::uint64_t value);

/// Whole file as a string; throws stormsift::Error tagged with `stage`.
std::string read_file(const std::string& path, const std::string& stage);

void write_file(const std::string& path, std::string_view contents, const std::string& stage);

/// Reads `key = value` lines; '#' starts a comment. Later keys override.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in,
                                                                  const std::string& stage);

}  // namespace stormsift
