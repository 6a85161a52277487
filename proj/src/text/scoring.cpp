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

#include "stormsift/text/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"

namespace stormsift::text {

std::string formula_name(TextFormula f) {
  switch (f) {
    case TextFormula::CSTVS: return "CSTVS";
    case TextFormula::DP: return "DP";
    case TextFormula::MCS: return "MCS";
    case TextFormula::SCSSC: return "SCSSC";
  }
  return "?";
}

TextFormula parse_formula(std::string_view name) {
  const std::string lower = to_lower(trim(name));
  for (auto f : kAllTextFormulas) {
    if (to_lower(formula_name(f)) == lower) return f;
  }
  throw Error("text", "unknown formula '" + std::string(name) + "'");
}

std::optional<double> score_vectors(TextFormula formula, std::span<const double> alpha,
                                    std::span<const std::span<const double>> taus) {
  if (taus.empty()) return std::nullopt;
  switch (formula) {
    case TextFormula::CSTVS:
    case TextFormula::DP: {
      std::vector<double> sum(alpha.size(), 0.0);
      for (const auto& tau : taus) {
        if (tau.size() != alpha.size()) throw Error("text", "vector dimensions differ");
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += tau[k];
      }
      return formula == TextFormula::DP ? dot(alpha, sum) : cosine(alpha, sum);
    }
    case TextFormula::MCS:
    case TextFormula::SCSSC: {
      double total = 0.0;
      for (const auto& tau : taus) total += cosine(alpha, tau);
      const auto n = static_cast<double>(taus.size());
      return formula == TextFormula::MCS ? total / n : total / std::sqrt(n);
    }
  }
  return std::nullopt;
}

std::optional<double> score_tweet(TextFormula formula, std::string_view seed_term,
                                  std::span<const std::string> tokens, const EmbeddingTable& table) {
  const auto alpha = table.find(seed_term);
  if (!alpha) {
    throw Error("text", "seed term '" + std::string(seed_term) + "' is not in the vocabulary of segment " +
                            table.segment());
  }
  std::vector<std::span<const double>> taus;
  taus.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (auto v = table.find(t)) taus.push_back(*v);
  }
  return score_vectors(formula, *alpha, taus);
}

std::vector<double> text_scores(std::span<const std::optional<double>> raw) {
  std::optional<double> lo, hi;
  for (const auto& r : raw) {
    if (!r) continue;
    lo = lo ? std::min(*lo, *r) : *r;
    hi = hi ? std::max(*hi, *r) : *r;
  }
  std::vector<double> out(raw.size(), 0.0);
  if (!lo) return out;
  const double range = *hi - *lo;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!raw[i]) continue;
    out[i] = range > 0.0 ? std::clamp(100.0 * (*raw[i] - *lo) / range, 0.0, 100.0) : 50.0;
  }
  return out;
}

std::vector<Neighbor> top_k_neighbors(std::string_view term, const EmbeddingTable& table,
                                      std::size_t k) {
  const auto alpha = table.find(term);
  if (!alpha) throw Error("text", "term '" + std::string(term) + "' is not in the vocabulary");
  std::vector<Neighbor> all;
  all.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.tokens()[i] == term) continue;
    all.push_back({table.tokens()[i], cosine(*alpha, table.vector_at(i))});
  }
  const auto better = [](const Neighbor& a, const Neighbor& b) {
    if (a.cosine != b.cosine) return a.cosine > b.cosine;
    return a.token < b.token;
  };
  const std::size_t keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), better);
  all.resize(keep);
  return all;
}

void write_neighbors_csv(std::ostream& out, std::span<const Neighbor> neighbors) {
  out << "rank,token,cosine\n";
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    out << i + 1 << ',' << neighbors[i].token << ',' << format_fixed(neighbors[i].cosine, 6) << '\n';
  }
}

}  // namespace stormsift::text
