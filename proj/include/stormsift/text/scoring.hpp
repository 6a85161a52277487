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

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stormsift/text/embedding.hpp"

namespace stormsift::text {

enum class TextFormula { CSTVS, DP, MCS, SCSSC };

inline constexpr std::array<TextFormula, 4> kAllTextFormulas = {
    TextFormula::CSTVS, TextFormula::DP, TextFormula::MCS, TextFormula::SCSSC};

std::string formula_name(TextFormula f);
/// Case-insensitive; throws stormsift::Error on unknown names.
TextFormula parse_formula(std::string_view name);

/// Raw score of a tweet given the seed vector and its in-vocabulary token
/// vectors. Greater means more related for every formula:
///   CSTVS  cos(alpha, sum tau)
///   DP     alpha . sum tau
///   MCS    mean of cos(alpha, tau_i)
///   SCSSC  sum of cos(alpha, tau_i) / sqrt(n)
/// Returns nullopt when there are no token vectors.
std::optional<double> score_vectors(TextFormula formula, std::span<const double> alpha,
                                    std::span<const std::span<const double>> taus);

/// Looks tokens up in `table`, skipping out-of-vocabulary ones. Throws
/// stormsift::Error when `seed_term` is not in the table.
std::optional<double> score_tweet(TextFormula formula, std::string_view seed_term,
                                  std::span<const std::string> tokens, const EmbeddingTable& table);

/// Min-max scales the raw scores of one window onto [0, 100]. Tweets without
/// a raw score get the window minimum (0). A window whose raw scores are all
/// equal, including a single tweet, maps to 50.
std::vector<double> text_scores(std::span<const std::optional<double>> raw);

struct Neighbor {
  std::string token;
  double cosine = 0.0;
};

/// The k tokens most cosine-similar to `term`, excluding the term itself.
/// Ties are broken by token order. Throws when `term` is not in the table.
std::vector<Neighbor> top_k_neighbors(std::string_view term, const EmbeddingTable& table,
                                      std::size_t k);

/// CSV with header rank,token,cosine (rank starts at 1).
void write_neighbors_csv(std::ostream& out, std::span<const Neighbor> neighbors);

}  // namespace stormsift::text
