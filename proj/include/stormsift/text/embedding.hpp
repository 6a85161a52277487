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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stormsift::text {

struct TextModelParams {
  int window_size = 5;
  int dimension = 100;
  int min_count = 5;
  int negative_samples = 5;
  int epochs = 5;
  std::uint64_t seed = 1;
  double learning_rate = 0.025;

  /// Throws stormsift::Error when a field is outside its allowed range.
  void validate() const;

  /// Compact "w=1 d=150 mc=5 neg=1 ep=25 seed=1" form used in reports.
  std::string describe() const;

  friend bool operator==(const TextModelParams&, const TextModelParams&) = default;
};

/// Token vectors learned for one time segment. Vectors are stored row-major
/// in vocabulary order (descending count, then lexicographic).
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::string segment, TextModelParams params, std::vector<std::string> tokens,
                 std::vector<double> values);

  const std::string& segment() const noexcept { return segment_; }
  const TextModelParams& params() const noexcept { return params_; }
  int dimension() const noexcept { return params_.dimension; }
  std::size_t size() const noexcept { return tokens_.size(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  bool contains(std::string_view token) const;
  std::optional<std::span<const double>> find(std::string_view token) const;
  std::span<const double> vector_at(std::size_t row) const;

  friend bool operator==(const EmbeddingTable& a, const EmbeddingTable& b) {
    return a.segment_ == b.segment_ && a.params_ == b.params_ && a.tokens_ == b.tokens_ &&
           a.values_ == b.values_;
  }

 private:
  std::string segment_;
  TextModelParams params_;
  std::vector<std::string> tokens_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Skip-gram with negative sampling, trained by SGD with a linearly decaying
/// learning rate. Single-threaded and fully determined by params.seed.
/// Throws stormsift::Error when no token survives min_count pruning.
EmbeddingTable train_embeddings(std::span<const std::vector<std::string>> sentences,
                                const TextModelParams& params, std::string segment);

void save_embeddings(std::ostream& out, const EmbeddingTable& table);
EmbeddingTable load_embeddings(std::istream& in);

double cosine(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace stormsift::text
