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
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "stormsift/common/random.hpp"

namespace stormsift::user {

struct TreeNode {
  int feature = -1;  ///< -1 marks a leaf
  double threshold = 0.0;  ///< go left when x[feature] <= threshold
  int left = -1;
  int right = -1;
  double value = 0.0;  ///< leaf output
  double gain = 0.0;   ///< weighted impurity decrease of this split
};

struct TreeOptions {
  int max_depth = 8;  ///< 0 = unlimited
  int min_samples_split = 2;
  int max_leaf_nodes = 0;  ///< 0 = unlimited
  int max_features = 0;    ///< features examined per split; 0 = all
};

/// Binary CART tree. Splits minimize the weighted variance of the targets,
/// which for 0/1 targets is half the Gini impurity, so classification and
/// regression share one criterion. Nodes are grown best-first.
class DecisionTree {
 public:
  DecisionTree() = default;
  explicit DecisionTree(std::vector<TreeNode> nodes);

  /// Leaf output for the samples reaching a leaf.
  using LeafValueFn = std::function<double(std::span<const std::size_t>)>;

  /// Fits on `samples` (indices into x, repeats allowed). When `leaf_value`
  /// is empty, leaves hold the weighted target mean.
  static DecisionTree fit(std::span<const std::vector<double>> x, std::span<const double> targets,
                          std::span<const double> weights, std::span<const std::size_t> samples,
                          const TreeOptions& options, Rng& rng, const LeafValueFn& leaf_value = {});

  double predict(std::span<const double> row) const;
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  std::size_t leaf_count() const;
  int depth() const;

  /// Preorder text form: "split <feature> <threshold> <gain>" or "leaf <value>".
  void save(std::ostream& out) const;
  /// Reads one tree written by save().
  static DecisionTree load(std::istream& in);

 private:
  std::vector<TreeNode> nodes_;
};

}  // namespace stormsift::user
