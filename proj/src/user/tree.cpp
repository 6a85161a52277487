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

#include "stormsift/user/tree.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <queue>
#include <string>

#include "stormsift/common/error.hpp"
#include "stormsift/common/strings.hpp"

namespace stormsift::user {

namespace {

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

struct Moments {
  double w = 0.0;
  double wy = 0.0;
  double wyy = 0.0;

  void add(double weight, double y) {
    w += weight;
    wy += weight * y;
    wyy += weight * y * y;
  }
  /// Weighted sum of squared deviations from the mean.
  double sse() const { return w > 0.0 ? std::max(0.0, wyy - wy * wy / w) : 0.0; }
};

class Builder {
 public:
  Builder(std::span<const std::vector<double>> x, std::span<const double> targets,
          std::span<const double> weights, const TreeOptions& options, Rng& rng,
          const DecisionTree::LeafValueFn& leaf_value)
      : x_(x), y_(targets), w_(weights), options_(options), rng_(rng), leaf_value_(leaf_value) {}

  std::vector<TreeNode> build(std::span<const std::size_t> samples) {
    if (samples.empty()) throw Error("user", "cannot fit a tree on zero samples");
    std::vector<std::size_t> root(samples.begin(), samples.end());
    open(std::move(root), 0);
    std::size_t leaves = 1;
    while (!queue_.empty()) {
      const std::size_t id = queue_.top().id;
      queue_.pop();
      if (options_.max_leaf_nodes > 0 && leaves >= static_cast<std::size_t>(options_.max_leaf_nodes)) break;
      Pending p = std::move(pending_[id]);
      std::vector<std::size_t> left, right;
      for (auto i : p.samples) {
        (x_[i][static_cast<std::size_t>(p.split.feature)] <= p.split.threshold ? left : right).push_back(i);
      }
      auto& node = nodes_[p.node];
      node.feature = p.split.feature;
      node.threshold = p.split.threshold;
      node.gain = p.split.gain;
      const int l = open(std::move(left), p.depth + 1);
      const int r = open(std::move(right), p.depth + 1);
      nodes_[p.node].left = l;
      nodes_[p.node].right = r;
      ++leaves;
    }
    return std::move(nodes_);
  }

 private:
  struct Pending {
    std::size_t node = 0;
    std::vector<std::size_t> samples;
    int depth = 0;
    Split split;
  };
  struct QueueEntry {
    double gain;
    std::size_t id;
    bool operator<(const QueueEntry& o) const {
      if (gain != o.gain) return gain < o.gain;
      return id > o.id;
    }
  };

  int open(std::vector<std::size_t> samples, int depth) {
    const auto index = nodes_.size();
    TreeNode node;
    node.value = leaf_value(samples);
    nodes_.push_back(node);
    if (auto split = find_split(samples, depth)) {
      const std::size_t id = pending_.size();
      pending_.push_back({index, std::move(samples), depth, *split});
      queue_.push({split->gain, id});
    }
    return static_cast<int>(index);
  }

  double leaf_value(std::span<const std::size_t> samples) const {
    if (leaf_value_) return leaf_value_(samples);
    Moments m;
    for (auto i : samples) m.add(w_[i], y_[i]);
    return m.w > 0.0 ? m.wy / m.w : 0.0;
  }

  std::optional<Split> find_split(const std::vector<std::size_t>& samples, int depth) {
    if (samples.size() < static_cast<std::size_t>(std::max(2, options_.min_samples_split))) return std::nullopt;
    if (options_.max_depth > 0 && depth >= options_.max_depth) return std::nullopt;
    Moments total;
    for (auto i : samples) total.add(w_[i], y_[i]);
    const double parent = total.sse();
    if (parent <= 0.0) return std::nullopt;

    const std::size_t n_features = x_[samples.front()].size();
    std::vector<std::size_t> features(n_features);
    std::iota(features.begin(), features.end(), 0);
    std::size_t k = n_features;
    if (options_.max_features > 0 && static_cast<std::size_t>(options_.max_features) < n_features) {
      k = static_cast<std::size_t>(options_.max_features);
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng_.below(n_features - i);
        std::swap(features[i], features[j]);
      }
    }

    std::optional<Split> best;
    std::vector<std::size_t> order(samples);
    for (std::size_t fi = 0; fi < k; ++fi) {
      const std::size_t f = features[fi];
      order = samples;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return x_[a][f] < x_[b][f]; });
      Moments left;
      for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
        left.add(w_[order[pos]], y_[order[pos]]);
        const double a = x_[order[pos]][f];
        const double b = x_[order[pos + 1]][f];
        if (!(a < b)) continue;
        const Moments right{total.w - left.w, total.wy - left.wy, total.wyy - left.wyy};
        const double gain = std::max(0.0, parent - left.sse() - right.sse());
        if (!best || gain > best->gain) {
          double threshold = a + (b - a) / 2.0;
          if (!(threshold < b)) threshold = a;
          best = Split{static_cast<int>(f), threshold, gain};
        }
      }
    }
    return best;
  }

  std::span<const std::vector<double>> x_;
  std::span<const double> y_;
  std::span<const double> w_;
  TreeOptions options_;
  Rng& rng_;
  const DecisionTree::LeafValueFn& leaf_value_;
  std::vector<TreeNode> nodes_;
  std::vector<Pending> pending_;
  std::priority_queue<QueueEntry> queue_;
};

void save_node(std::ostream& out, const std::vector<TreeNode>& nodes, int index) {
  const auto& n = nodes[static_cast<std::size_t>(index)];
  if (n.feature < 0) {
    out << "leaf " << format_exact(n.value) << '\n';
    return;
  }
  out << "split " << n.feature << ' ' << format_exact(n.threshold) << ' ' << format_exact(n.gain) << '\n';
  save_node(out, nodes, n.left);
  save_node(out, nodes, n.right);
}

int load_node(std::istream& in, std::vector<TreeNode>& nodes) {
  std::string line;
  if (!std::getline(in, line)) throw Error("user", "tree is truncated");
  const auto parts = split(trim(line), ' ');
  const auto number = [&](std::size_t i) {
    if (i >= parts.size()) throw Error("user", "malformed tree line '" + line + "'");
    const auto v = parse_double(parts[i]);
    if (!v) throw Error("user", "malformed tree line '" + line + "'");
    return *v;
  };
  const int index = static_cast<int>(nodes.size());
  nodes.emplace_back();
  if (!parts.empty() && parts[0] == "leaf") {
    nodes.back().value = number(1);
    return index;
  }
  if (parts.empty() || parts[0] != "split") throw Error("user", "malformed tree line '" + line + "'");
  const double feature = number(1);
  if (feature < 0 || feature != std::floor(feature)) throw Error("user", "bad split feature in '" + line + "'");
  nodes.back().feature = static_cast<int>(feature);
  nodes.back().threshold = number(2);
  nodes.back().gain = number(3);
  const int l = load_node(in, nodes);
  const int r = load_node(in, nodes);
  nodes[static_cast<std::size_t>(index)].left = l;
  nodes[static_cast<std::size_t>(index)].right = r;
  return index;
}

}  // namespace

DecisionTree::DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error("user", "tree has no nodes");
}

DecisionTree DecisionTree::fit(std::span<const std::vector<double>> x, std::span<const double> targets,
                               std::span<const double> weights, std::span<const std::size_t> samples,
                               const TreeOptions& options, Rng& rng, const LeafValueFn& leaf_value) {
  Builder builder(x, targets, weights, options, rng, leaf_value);
  return DecisionTree(builder.build(samples));
}

double DecisionTree::predict(std::span<const double> row) const {
  std::size_t i = 0;
  while (nodes_[i].feature >= 0) {
    const auto& n = nodes_[i];
    i = static_cast<std::size_t>(row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return nodes_[i].value;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.feature < 0; }));
}

int DecisionTree::depth() const {
  std::vector<int> d(nodes_.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (n.feature < 0) continue;
    d[static_cast<std::size_t>(n.left)] = d[i] + 1;
    d[static_cast<std::size_t>(n.right)] = d[i] + 1;
    best = std::max(best, d[i] + 1);
  }
  return best;
}

void DecisionTree::save(std::ostream& out) const { save_node(out, nodes_, 0); }

DecisionTree DecisionTree::load(std::istream& in) {
  std::vector<TreeNode> nodes;
  load_node(in, nodes);
  return DecisionTree(std::move(nodes));
}

}  // namespace stormsift::user
