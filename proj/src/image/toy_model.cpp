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

#include "stormsift/image/toy_model.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <istream>
#include <ostream>

#include "stormsift/common/error.hpp"
#include "stormsift/common/random.hpp"
#include "stormsift/common/strings.hpp"

namespace stormsift::image {

namespace {

constexpr const char* kMagic = "# stormsift toy image model v1";

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LogisticModel constant_model(std::size_t width, double p) {
  const double q = std::clamp(p, 1e-3, 1.0 - 1e-3);
  LogisticModel m;
  m.means.assign(width, 0.0);
  m.scales.assign(width, 1.0);
  m.weights.assign(width + 1, 0.0);
  m.weights[0] = std::log(q / (1.0 - q));
  return m;
}

void write_row(std::ostream& out, const std::string& label, const std::vector<double>& v) {
  out << label;
  for (double x : v) out << ' ' << format_exact(x);
  out << '\n';
}

}  // namespace

std::vector<double> image_features(const RgbImage& image) {
  if (image.empty()) throw Error("image", "cannot featurize an empty image");
  std::vector<double> f(kToyFeatureCount, 0.0);
  const auto n = static_cast<double>(image.width) * image.height;
  std::vector<int> gray(static_cast<std::size_t>(image.width) * image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const auto* p = image.at(x, y);
      for (int c = 0; c < 3; ++c) f[static_cast<std::size_t>(c * kHistogramBins + p[c] * kHistogramBins / 256)] += 1.0;
      gray[static_cast<std::size_t>(y) * image.width + x] = (299 * p[0] + 587 * p[1] + 114 * p[2]) / 1000;
    }
  }
  for (std::size_t k = 0; k + 1 < kToyFeatureCount; ++k) f[k] /= n;
  std::size_t edges = 0;
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const int g = gray[static_cast<std::size_t>(y) * image.width + x];
      const int dx = x + 1 < image.width ? gray[static_cast<std::size_t>(y) * image.width + x + 1] - g : 0;
      const int dy = y + 1 < image.height ? gray[static_cast<std::size_t>(y + 1) * image.width + x] - g : 0;
      if (std::abs(dx) + std::abs(dy) > kEdgeThreshold) ++edges;
    }
  }
  f.back() = static_cast<double>(edges) / n;
  return f;
}

double LogisticModel::predict(std::span<const double> x) const {
  if (x.size() != means.size()) throw Error("image", "feature width does not match the model");
  double s = weights.at(0);
  for (std::size_t j = 0; j < x.size(); ++j) s += weights[j + 1] * (x[j] - means[j]) / scales[j];
  return sigmoid(s);
}

LogisticModel fit_logistic(std::span<const std::vector<double>> rows, const std::vector<bool>& labels,
                           double l2, int max_iter, double tolerance) {
  if (rows.empty()) throw Error("image", "no training rows");
  const std::size_t n = rows.size();
  const std::size_t f = rows.front().size();
  LogisticModel m;
  m.means.assign(f, 0.0);
  m.scales.assign(f, 1.0);
  for (std::size_t j = 0; j < f; ++j) {
    double mean = 0.0;
    for (const auto& r : rows) mean += r[j];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& r : rows) var += (r[j] - mean) * (r[j] - mean);
    var /= static_cast<double>(n);
    m.means[j] = mean;
    m.scales[j] = var > 1e-24 ? std::sqrt(var) : 1.0;
  }
  std::vector<std::vector<double>> z(n, std::vector<double>(f + 1, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < f; ++j) z[i][j + 1] = (rows[i][j] - m.means[j]) / m.scales[j];
  }
  const double step = 1.0 / (0.25 * static_cast<double>(f + 1) + l2);
  m.weights.assign(f + 1, 0.0);
  std::vector<double> grad(f + 1);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j <= f; ++j) s += m.weights[j] * z[i][j];
      const double r = sigmoid(s) - (labels[i] ? 1.0 : 0.0);
      for (std::size_t j = 0; j <= f; ++j) grad[j] += r * z[i][j];
    }
    double worst = 0.0;
    for (std::size_t j = 0; j <= f; ++j) {
      grad[j] /= static_cast<double>(n);
      if (j > 0) grad[j] += l2 * m.weights[j];
      worst = std::max(worst, std::abs(grad[j]));
    }
    if (worst < tolerance) break;
    for (std::size_t j = 0; j <= f; ++j) m.weights[j] -= step * grad[j];
  }
  return m;
}

ToyImageModel train_toy_classifier(std::span<const LabeledImage> images, std::uint64_t seed, double gate) {
  if (images.empty()) throw Error("image", "toy classifier needs training images");
  std::vector<std::vector<double>> rows;
  std::vector<bool> related;
  for (const auto& img : images) {
    rows.push_back(image_features(img.image));
    related.push_back(img.label.related);
  }
  const auto n_related = static_cast<std::size_t>(std::count(related.begin(), related.end(), true));
  if (n_related == 0 || n_related == images.size()) {
    throw Error("image", "toy classifier needs both related and unrelated images");
  }
  ToyImageModel m;
  m.seed = seed;
  m.gate = gate;
  m.related = fit_logistic(rows, related);

  std::vector<std::vector<double>> related_rows;
  std::vector<const LabeledImage*> related_images;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!related[i]) continue;
    related_rows.push_back(rows[i]);
    related_images.push_back(&images[i]);
  }
  const auto fit_tag = [&](core::Tag tag) {
    std::vector<bool> y;
    for (const auto* img : related_images) y.push_back(img->label.has_tag(tag));
    const auto pos = static_cast<std::size_t>(std::count(y.begin(), y.end(), true));
    if (pos == 0 || pos == y.size()) {
      return constant_model(kToyFeatureCount, static_cast<double>(pos) / static_cast<double>(y.size()));
    }
    return fit_logistic(related_rows, y);
  };
  m.flood = fit_tag(core::Tag::Flooding);
  m.wind = fit_tag(core::Tag::Windy);
  m.destruction = fit_tag(core::Tag::Destruction);

  bool first = true;
  for (const auto& r : rows) {
    const double l = std::log(std::clamp(m.related.predict(r), kProbabilityFloor, 1.0));
    m.calibration_min = first ? l : std::min(m.calibration_min, l);
    m.calibration_max = first ? l : std::max(m.calibration_max, l);
    first = false;
  }
  return m;
}

ImageScores score_image(const ToyImageModel& model, const RgbImage& image) {
  const auto f = image_features(image);
  ImageScores s;
  s.source = ScoreSource::ToyModel;
  s.p_related = model.related.predict(f);
  if (s.p_related >= model.gate) {
    s.tags = TagProbabilities{model.flood.predict(f), model.wind.predict(f), model.destruction.predict(f)};
  }
  return s;
}

ToyEvaluation evaluate_toy_classifier(std::span<const LabeledImage> images, std::uint64_t seed, double gate) {
  Rng rng(seed);
  std::vector<std::size_t> train, test;
  for (bool cls : {true, false}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i].label.related == cls) members.push_back(i);
    }
    if (members.size() < 2) throw Error("image", "each class needs at least two images to evaluate");
    rng.shuffle(std::span<std::size_t>(members));
    const auto n_test = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::lround(0.3 * static_cast<double>(members.size()))), 1, members.size() - 1);
    test.insert(test.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_test));
    train.insert(train.end(), members.begin() + static_cast<std::ptrdiff_t>(n_test), members.end());
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  std::vector<LabeledImage> train_set;
  for (auto i : train) train_set.push_back(images[i]);

  ToyEvaluation e;
  e.model = train_toy_classifier(train_set, seed, gate);
  e.train_size = train.size();
  e.test_size = test.size();
  std::size_t correct = 0, tp = 0, fp = 0, fn = 0;
  for (auto i : test) {
    const bool predicted = score_image(e.model, images[i].image).p_related >= 0.5;
    const bool actual = images[i].label.related;
    correct += predicted == actual;
    tp += predicted && actual;
    fp += predicted && !actual;
    fn += !predicted && actual;
  }
  e.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
  e.f1 = tp == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
  return e;
}

void save_toy_model(std::ostream& out, const ToyImageModel& m) {
  out << kMagic << '\n';
  out << "features hist" << kHistogramBins << "x3+edge" << kEdgeThreshold << '\n';
  out << "seed " << m.seed << '\n';
  out << "gate " << format_exact(m.gate) << '\n';
  out << "calibration " << format_exact(m.calibration_min) << ' ' << format_exact(m.calibration_max) << '\n';
  const std::pair<const char*, const LogisticModel*> models[] = {
      {"related", &m.related}, {"flood", &m.flood}, {"wind", &m.wind}, {"destruction", &m.destruction}};
  for (const auto& [name, model] : models) {
    out << "model " << name << '\n';
    write_row(out, "means", model->means);
    write_row(out, "scales", model->scales);
    write_row(out, "weights", model->weights);
  }
}

ToyImageModel load_toy_model(std::istream& in) {
  std::string line;
  const auto next = [&](std::string_view key) {
    if (!std::getline(in, line)) throw Error("image", "toy model file is truncated");
    auto parts = split(trim(line), ' ');
    if (parts.empty() || parts[0] != key) {
      throw Error("image", "expected '" + std::string(key) + "' in toy model, got '" + line + "'");
    }
    parts.erase(parts.begin());
    return parts;
  };
  const auto numbers = [&](const std::vector<std::string>& parts, std::size_t expected) {
    if (parts.size() != expected) throw Error("image", "wrong number of values in '" + line + "'");
    std::vector<double> v;
    for (const auto& p : parts) {
      const auto d = parse_double(p);
      if (!d) throw Error("image", "bad number '" + p + "' in toy model");
      v.push_back(*d);
    }
    return v;
  };
  if (!std::getline(in, line) || trim(line) != kMagic) throw Error("image", "not a stormsift toy image model");
  const auto features = next("features");
  const std::string expected = "hist" + std::to_string(kHistogramBins) + "x3+edge" + std::to_string(kEdgeThreshold);
  if (features.size() != 1 || features[0] != expected) throw Error("image", "unsupported feature spec");
  ToyImageModel m;
  const auto seed = next("seed");
  const auto s = seed.size() == 1 ? parse_int(seed[0]) : std::nullopt;
  if (!s) throw Error("image", "bad seed line");
  m.seed = static_cast<std::uint64_t>(*s);
  m.gate = numbers(next("gate"), 1)[0];
  const auto calib = numbers(next("calibration"), 2);
  m.calibration_min = calib[0];
  m.calibration_max = calib[1];
  for (auto* target : {&m.related, &m.flood, &m.wind, &m.destruction}) {
    next("model");
    target->means = numbers(next("means"), kToyFeatureCount);
    target->scales = numbers(next("scales"), kToyFeatureCount);
    target->weights = numbers(next("weights"), kToyFeatureCount + 1);
  }
  return m;
}

ToyModelScorer::ToyModelScorer(ToyImageModel model, std::string base_dir)
    : model_(std::move(model)), base_dir_(std::move(base_dir)) {}

ImageScores ToyModelScorer::score(const core::MediaRef& media) const {
  if (media.path.empty()) throw Error("image", "media '" + media.media_id + "' has no file path");
  std::filesystem::path p(media.path);
  if (p.is_relative() && !base_dir_.empty()) p = std::filesystem::path(base_dir_) / p;
  return score_image(model_, load_image(p.string()));
}

}  // namespace stormsift::image
