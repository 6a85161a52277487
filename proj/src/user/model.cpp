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

#include "stormsift/user/model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "stormsift/common/error.hpp"
#include "stormsift/common/random.hpp"
#include "stormsift/common/strings.hpp"

namespace stormsift::user {

namespace {

constexpr const char* kMagic = "# stormsift user model v1";

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int as_int(const Hyperparams& hp, const std::string& name) {
  return static_cast<int>(std::lround(hp.at(name)));
}

/// Inverse-frequency weights so both classes carry equal total weight.
std::vector<double> class_weights(const Dataset& data) {
  const auto n = static_cast<double>(data.size());
  const auto pos = static_cast<double>(data.positives());
  const double w_pos = n / (2.0 * pos);
  const double w_neg = n / (2.0 * (n - pos));
  std::vector<double> w;
  w.reserve(data.size());
  for (bool y : data.labels) w.push_back(y ? w_pos : w_neg);
  return w;
}

void check_dataset(const Dataset& data) {
  if (data.rows.empty()) throw Error("user", "training set is empty");
  const auto pos = data.positives();
  if (pos == 0 || pos == data.size()) throw Error("user", "training set must contain both classes");
  for (const auto& row : data.rows) {
    if (row.size() != data.feature_names.size()) throw Error("user", "feature row has the wrong width");
    for (double v : row) {
      if (!std::isfinite(v)) throw Error("user", "feature value is not finite");
    }
  }
}

void train_logistic(TrainedUserModel& m, const Dataset& data) {
  const std::size_t n = data.size();
  const std::size_t f = data.feature_names.size();
  const double l2 = m.hyperparams.at("l2");
  const int max_iter = as_int(m.hyperparams, "max_iter");
  const double tol = m.hyperparams.at("tolerance");

  m.means.assign(f, 0.0);
  m.scales.assign(f, 1.0);
  for (std::size_t j = 0; j < f; ++j) {
    double mean = 0.0;
    for (const auto& r : data.rows) mean += r[j];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& r : data.rows) var += (r[j] - mean) * (r[j] - mean);
    var /= static_cast<double>(n);
    m.means[j] = mean;
    m.scales[j] = var > 0.0 ? std::sqrt(var) : 1.0;
  }
  std::vector<std::vector<double>> z(n, std::vector<double>(f + 1, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < f; ++j) z[i][j + 1] = (data.rows[i][j] - m.means[j]) / m.scales[j];
  }
  const auto w = class_weights(data);
  double w_total = 0.0;
  for (double wi : w) w_total += wi;

  // Standardized columns bound the log-loss curvature by (f + 1) / 4.
  const double step = 1.0 / (0.25 * static_cast<double>(f + 1) + l2);
  m.weights.assign(f + 1, 0.0);
  std::vector<double> grad(f + 1);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j <= f; ++j) s += m.weights[j] * z[i][j];
      const double r = w[i] * (sigmoid(s) - (data.labels[i] ? 1.0 : 0.0));
      for (std::size_t j = 0; j <= f; ++j) grad[j] += r * z[i][j];
    }
    double worst = 0.0;
    for (std::size_t j = 0; j <= f; ++j) {
      grad[j] /= w_total;
      if (j > 0) grad[j] += l2 * m.weights[j];
      worst = std::max(worst, std::abs(grad[j]));
    }
    if (worst < tol) break;
    for (std::size_t j = 0; j <= f; ++j) m.weights[j] -= step * grad[j];
  }
}

TreeOptions tree_options(const Hyperparams& hp, int max_features) {
  TreeOptions o;
  o.max_depth = as_int(hp, "max_depth");
  o.min_samples_split = as_int(hp, "min_samples_split");
  o.max_leaf_nodes = as_int(hp, "max_leaf_nodes");
  o.max_features = max_features;
  return o;
}

void train_forest(TrainedUserModel& m, const Dataset& data, int threads) {
  const auto n_trees = static_cast<std::size_t>(std::max(1, as_int(m.hyperparams, "n_trees")));
  const std::size_t f = data.feature_names.size();
  int max_features = as_int(m.hyperparams, "max_features");
  if (max_features <= 0) max_features = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(f)))));
  const auto options = tree_options(m.hyperparams, max_features);
  const bool bootstrap = m.hyperparams.at("bootstrap") != 0.0;

  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < data.size(); ++i) (data.labels[i] ? pos : neg).push_back(i);
  std::vector<double> targets;
  for (bool y : data.labels) targets.push_back(y ? 1.0 : 0.0);
  const std::vector<double> ones(data.size(), 1.0);
  const std::size_t per_class = data.size() / 2;

  m.trees.assign(n_trees, DecisionTree());
  const auto grow = [&](std::size_t t) {
    Rng rng(mix_seed(m.seed, t));
    std::vector<std::size_t> sample;
    if (bootstrap) {
      // Balanced bootstrap: equal draws with replacement from each class.
      for (std::size_t k = 0; k < per_class; ++k) sample.push_back(pos[rng.below(pos.size())]);
      for (std::size_t k = 0; k < per_class; ++k) sample.push_back(neg[rng.below(neg.size())]);
    } else {
      for (std::size_t i = 0; i < data.size(); ++i) sample.push_back(i);
    }
    m.trees[t] = DecisionTree::fit(data.rows, targets, ones, sample, options, rng);
  };

  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, threads)), n_trees);
  if (workers <= 1) {
    for (std::size_t t = 0; t < n_trees; ++t) grow(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t k = 0; k < workers; ++k) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < n_trees; t = next++) grow(t);
    });
  }
}

void train_boosted(TrainedUserModel& m, const Dataset& data) {
  const int stages = std::max(1, as_int(m.hyperparams, "n_stages"));
  const double shrinkage = m.hyperparams.at("learning_rate");
  const auto options = tree_options(m.hyperparams, 0);
  const auto w = class_weights(data);
  const std::size_t n = data.size();

  double w_pos = 0.0, w_neg = 0.0;
  for (std::size_t i = 0; i < n; ++i) (data.labels[i] ? w_pos : w_neg) += w[i];
  m.base_score = std::log(w_pos / w_neg);

  std::vector<double> f(n, m.base_score), grad(n), hess(n);
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  Rng rng(m.seed);
  for (int s = 0; s < stages; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(f[i]);
      grad[i] = (data.labels[i] ? 1.0 : 0.0) - p;
      hess[i] = p * (1.0 - p);
    }
    const auto newton = [&](std::span<const std::size_t> idx) {
      double num = 0.0, den = 0.0;
      for (auto i : idx) {
        num += w[i] * grad[i];
        den += w[i] * hess[i];
      }
      return shrinkage * num / std::max(den, 1e-12);
    };
    auto tree = DecisionTree::fit(data.rows, grad, w, all, options, rng, newton);
    for (std::size_t i = 0; i < n; ++i) f[i] += tree.predict(data.rows[i]);
    m.trees.push_back(std::move(tree));
  }
}

void calibrate(TrainedUserModel& m, const Dataset& data) {
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double l = std::log(std::clamp(predict_proba(m, data.rows[i]), kProbabilityFloor, 1.0));
    lo = i == 0 ? l : std::min(lo, l);
    hi = i == 0 ? l : std::max(hi, l);
  }
  m.calibration_min = lo;
  m.calibration_max = hi;
}

}  // namespace

std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::LogisticRegression: return "logistic_regression";
    case ModelKind::RandomForest: return "random_forest";
    case ModelKind::GradientBoosted: return "gradient_boosted";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  const std::string n = to_lower(trim(name));
  if (n == "logistic_regression" || n == "lr") return ModelKind::LogisticRegression;
  if (n == "random_forest" || n == "rf") return ModelKind::RandomForest;
  if (n == "gradient_boosted" || n == "gb") return ModelKind::GradientBoosted;
  throw Error("user", "unknown model kind '" + std::string(name) + "'");
}

Hyperparams default_hyperparams(ModelKind kind) {
  switch (kind) {
    case ModelKind::LogisticRegression:
      return {{"l2", 1e-4}, {"max_iter", 20000}, {"tolerance", 1e-6}};
    case ModelKind::RandomForest:
      return {{"n_trees", 100},       {"max_depth", 12},   {"min_samples_split", 2},
              {"max_leaf_nodes", 0},  {"max_features", 0}, {"bootstrap", 1}};
    case ModelKind::GradientBoosted:
      return {{"n_stages", 100},        {"learning_rate", 0.1}, {"max_depth", 3},
              {"min_samples_split", 2}, {"max_leaf_nodes", 0}};
  }
  return {};
}

Hyperparams resolve_hyperparams(ModelKind kind, const Hyperparams& overrides) {
  Hyperparams hp = default_hyperparams(kind);
  for (const auto& [name, value] : overrides) {
    if (!hp.contains(name)) {
      throw Error("user", "hyperparameter '" + name + "' does not apply to " + model_kind_name(kind));
    }
    if (!std::isfinite(value) || value < 0.0) {
      throw Error("user", "hyperparameter '" + name + "' must be a non-negative number");
    }
    hp[name] = value;
  }
  return hp;
}

std::string describe_hyperparams(const Hyperparams& hp) {
  std::string out;
  for (const auto& [name, value] : hp) {
    if (!out.empty()) out += ' ';
    out += name + "=" + format_exact(value);
  }
  return out;
}

TrainedUserModel train_classifier(ModelKind kind, const Dataset& data, const Hyperparams& hyperparams,
                                  std::uint64_t seed, int threads) {
  check_dataset(data);
  TrainedUserModel m;
  m.kind = kind;
  m.seed = seed;
  m.feature_names = data.feature_names;
  m.hyperparams = resolve_hyperparams(kind, hyperparams);
  switch (kind) {
    case ModelKind::LogisticRegression: train_logistic(m, data); break;
    case ModelKind::RandomForest: train_forest(m, data, threads); break;
    case ModelKind::GradientBoosted: train_boosted(m, data); break;
  }
  calibrate(m, data);
  return m;
}

double predict_proba(const TrainedUserModel& model, std::span<const double> row) {
  if (row.size() != model.feature_names.size()) throw Error("user", "feature row has the wrong width");
  switch (model.kind) {
    case ModelKind::LogisticRegression: {
      double s = model.weights.at(0);
      for (std::size_t j = 0; j < row.size(); ++j) {
        s += model.weights[j + 1] * (row[j] - model.means[j]) / model.scales[j];
      }
      return sigmoid(s);
    }
    case ModelKind::RandomForest: {
      double total = 0.0;
      for (const auto& t : model.trees) total += t.predict(row);
      return std::clamp(total / static_cast<double>(model.trees.size()), 0.0, 1.0);
    }
    case ModelKind::GradientBoosted: {
      double s = model.base_score;
      for (const auto& t : model.trees) s += t.predict(row);
      return sigmoid(s);
    }
  }
  return 0.0;
}

double predict_proba(const TrainedUserModel& model, const UserFeatures& features) {
  return predict_proba(model, feature_vector(features, model.feature_names));
}

double user_score(const TrainedUserModel& model, double probability) {
  const double l = std::log(std::clamp(probability, kProbabilityFloor, 1.0));
  const double range = model.calibration_max - model.calibration_min;
  if (!(range > 0.0)) return 50.0;
  return std::clamp(100.0 * (l - model.calibration_min) / range, 0.0, 100.0);
}

std::vector<std::pair<std::string, double>> gini_importance(const TrainedUserModel& model) {
  if (model.kind == ModelKind::LogisticRegression) {
    throw Error("user", "impurity importance needs a tree ensemble");
  }
  const std::size_t f = model.feature_names.size();
  std::vector<double> total(f, 0.0);
  for (const auto& tree : model.trees) {
    std::vector<double> per(f, 0.0);
    double sum = 0.0;
    for (const auto& node : tree.nodes()) {
      if (node.feature < 0) continue;
      per[static_cast<std::size_t>(node.feature)] += node.gain;
      sum += node.gain;
    }
    if (sum <= 0.0) continue;
    for (std::size_t j = 0; j < f; ++j) total[j] += per[j] / sum;
  }
  double sum = 0.0;
  for (double v : total) sum += v;
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t j = 0; j < f; ++j) out.emplace_back(model.feature_names[j], sum > 0.0 ? total[j] / sum : 0.0);
  return out;
}

void save_model(std::ostream& out, const TrainedUserModel& m) {
  out << kMagic << '\n';
  out << "kind " << model_kind_name(m.kind) << '\n';
  out << "seed " << m.seed << '\n';
  out << "features";
  for (const auto& name : m.feature_names) out << ' ' << name;
  out << '\n';
  out << "calibration " << format_exact(m.calibration_min) << ' ' << format_exact(m.calibration_max) << '\n';
  out << "hyperparams " << describe_hyperparams(m.hyperparams) << '\n';
  if (m.kind == ModelKind::LogisticRegression) {
    const auto row = [&](const char* label, const std::vector<double>& v) {
      out << label;
      for (double x : v) out << ' ' << format_exact(x);
      out << '\n';
    };
    row("means", m.means);
    row("scales", m.scales);
    row("weights", m.weights);
    return;
  }
  out << "base_score " << format_exact(m.base_score) << '\n';
  out << "trees " << m.trees.size() << '\n';
  for (const auto& t : m.trees) t.save(out);
}

TrainedUserModel load_model(std::istream& in) {
  std::string line;
  const auto next = [&](std::string_view key) {
    if (!std::getline(in, line)) throw Error("user", "model file is truncated");
    auto parts = split(trim(line), ' ');
    if (parts.empty() || parts[0] != key) {
      throw Error("user", "expected '" + std::string(key) + "' in model file, got '" + line + "'");
    }
    parts.erase(parts.begin());
    return parts;
  };
  const auto numbers = [&](const std::vector<std::string>& parts) {
    std::vector<double> v;
    for (const auto& p : parts) {
      const auto d = parse_double(p);
      if (!d) throw Error("user", "bad number '" + p + "' in model file");
      v.push_back(*d);
    }
    return v;
  };

  if (!std::getline(in, line) || trim(line) != kMagic) throw Error("user", "not a stormsift user model");
  TrainedUserModel m;
  const auto kind = next("kind");
  if (kind.size() != 1) throw Error("user", "bad kind line");
  m.kind = parse_model_kind(kind[0]);
  const auto seed = next("seed");
  const auto seed_value = seed.size() == 1 ? parse_int(seed[0]) : std::nullopt;
  if (!seed_value) throw Error("user", "bad seed line");
  m.seed = static_cast<std::uint64_t>(*seed_value);
  m.feature_names = next("features");
  for (const auto& name : m.feature_names) feature_value(UserFeatures{}, name);
  const auto calib = numbers(next("calibration"));
  if (calib.size() != 2) throw Error("user", "bad calibration line");
  m.calibration_min = calib[0];
  m.calibration_max = calib[1];
  Hyperparams hp;
  for (const auto& kv : next("hyperparams")) {
    const auto eq = kv.find('=');
    const auto v = eq == std::string::npos ? std::nullopt : parse_double(kv.substr(eq + 1));
    if (!v) throw Error("user", "bad hyperparameter '" + kv + "'");
    hp[kv.substr(0, eq)] = *v;
  }
  m.hyperparams = resolve_hyperparams(m.kind, hp);
  const std::size_t f = m.feature_names.size();
  if (m.kind == ModelKind::LogisticRegression) {
    m.means = numbers(next("means"));
    m.scales = numbers(next("scales"));
    m.weights = numbers(next("weights"));
    if (m.means.size() != f || m.scales.size() != f || m.weights.size() != f + 1) {
      throw Error("user", "logistic weights do not match the feature list");
    }
    return m;
  }
  const auto base = numbers(next("base_score"));
  if (base.size() != 1) throw Error("user", "bad base_score line");
  m.base_score = base[0];
  const auto count = next("trees");
  const auto n = count.size() == 1 ? parse_int(count[0]) : std::nullopt;
  if (!n || *n <= 0) throw Error("user", "bad tree count");
  for (std::int64_t t = 0; t < *n; ++t) {
    m.trees.push_back(DecisionTree::load(in));
    for (const auto& node : m.trees.back().nodes()) {
      if (node.feature >= static_cast<int>(f)) throw Error("user", "tree splits on an unknown feature");
    }
  }
  return m;
}

}  // namespace stormsift::user
