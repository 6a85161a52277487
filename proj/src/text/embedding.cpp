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

#include "stormsift/text/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "stormsift/common/error.hpp"
#include "stormsift/common/random.hpp"
#include "stormsift/common/strings.hpp"

namespace stormsift::text {

namespace {

constexpr const char* kMagic = "# stormsift embeddings v1";
constexpr double kMinLearningRateFraction = 1e-4;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error("text", what);
}

double sigmoid(double x) {
  if (x > 30.0) return 1.0;
  if (x < -30.0) return 0.0;
  return 1.0 / (1.0 + std::exp(-x));
}

struct Vocabulary {
  std::vector<std::string> tokens;
  std::vector<std::uint64_t> counts;
  std::unordered_map<std::string, std::size_t> index;
};

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> sentences, int min_count) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& s : sentences) {
    for (const auto& t : s) ++counts[t];
  }
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [token, count] : counts) {
    if (count >= static_cast<std::uint64_t>(min_count)) kept.emplace_back(token, count);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary v;
  for (auto& [token, count] : kept) {
    v.index.emplace(token, v.tokens.size());
    v.tokens.push_back(token);
    v.counts.push_back(count);
  }
  return v;
}

/// Cumulative unigram^0.75 distribution for drawing noise tokens.
class NoiseSampler {
 public:
  explicit NoiseSampler(const std::vector<std::uint64_t>& counts) {
    cumulative_.reserve(counts.size());
    double total = 0.0;
    for (auto c : counts) {
      total += std::pow(static_cast<double>(c), 0.75);
      cumulative_.push_back(total);
    }
    for (auto& c : cumulative_) c /= total;
  }

  std::size_t draw(Rng& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                 cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace

void TextModelParams::validate() const {
  require(window_size >= 1 && window_size <= 10, "window_size must be in 1..10");
  require(dimension >= 50 && dimension <= 500 && dimension % 50 == 0,
          "dimension must be a multiple of 50 in 50..500");
  require(min_count >= 0 && min_count <= 9, "min_count must be in 0..9");
  require(negative_samples >= 0 && negative_samples <= 9, "negative_samples must be in 0..9");
  require(epochs >= 1, "epochs must be positive");
  require(learning_rate > 0.0 && std::isfinite(learning_rate), "learning_rate must be positive");
}

std::string TextModelParams::describe() const {
  std::ostringstream os;
  os << "w=" << window_size << " d=" << dimension << " mc=" << min_count
     << " neg=" << negative_samples << " ep=" << epochs << " seed=" << seed;
  return os.str();
}

EmbeddingTable::EmbeddingTable(std::string segment, TextModelParams params,
                               std::vector<std::string> tokens, std::vector<double> values)
    : segment_(std::move(segment)),
      params_(params),
      tokens_(std::move(tokens)),
      values_(std::move(values)) {
  require(values_.size() == tokens_.size() * static_cast<std::size_t>(params_.dimension),
          "embedding values do not match vocabulary size and dimension");
  for (double v : values_) require(std::isfinite(v), "embedding contains a non-finite value");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    require(index_.emplace(tokens_[i], i).second, "duplicate token '" + tokens_[i] + "'");
  }
}

bool EmbeddingTable::contains(std::string_view token) const {
  return index_.contains(std::string(token));
}

std::optional<std::span<const double>> EmbeddingTable::find(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return vector_at(it->second);
}

std::span<const double> EmbeddingTable::vector_at(std::size_t row) const {
  const auto d = static_cast<std::size_t>(params_.dimension);
  return std::span<const double>(values_).subspan(row * d, d);
}

EmbeddingTable train_embeddings(std::span<const std::vector<std::string>> sentences,
                                const TextModelParams& params, std::string segment) {
  params.validate();
  const Vocabulary vocab = build_vocabulary(sentences, params.min_count);
  if (vocab.tokens.empty()) {
    throw Error("text", "segment " + segment + ": vocabulary is empty after min_count pruning");
  }

  const auto dim = static_cast<std::size_t>(params.dimension);
  const std::size_t n_vocab = vocab.tokens.size();
  Rng rng(params.seed);

  std::vector<double> input(n_vocab * dim);
  std::vector<double> output(n_vocab * dim, 0.0);
  for (auto& v : input) v = (rng.uniform() - 0.5) / static_cast<double>(dim);

  std::vector<std::vector<std::size_t>> encoded;
  encoded.reserve(sentences.size());
  std::uint64_t words_per_epoch = 0;
  for (const auto& s : sentences) {
    std::vector<std::size_t> ids;
    for (const auto& t : s) {
      const auto it = vocab.index.find(t);
      if (it != vocab.index.end()) ids.push_back(it->second);
    }
    words_per_epoch += ids.size();
    if (ids.size() > 1) encoded.push_back(std::move(ids));
  }

  const NoiseSampler noise(vocab.counts);
  const double total_words =
      std::max(1.0, static_cast<double>(words_per_epoch) * static_cast<double>(params.epochs));
  double processed = 0.0;
  std::vector<double> grad(dim);

  const auto update = [&](std::size_t center, std::size_t target, double label, double lr) {
    double* in = &input[center * dim];
    double* out = &output[target * dim];
    double f = 0.0;
    for (std::size_t k = 0; k < dim; ++k) f += in[k] * out[k];
    const double g = (label - sigmoid(f)) * lr;
    for (std::size_t k = 0; k < dim; ++k) {
      grad[k] += g * out[k];
      out[k] += g * in[k];
    }
  };

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (const auto& ids : encoded) {
      for (std::size_t pos = 0; pos < ids.size(); ++pos) {
        const double lr = std::max(params.learning_rate * kMinLearningRateFraction,
                                   params.learning_rate * (1.0 - processed / total_words));
        processed += 1.0;
        const auto reduced = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(params.window_size)));
        const std::size_t span = static_cast<std::size_t>(params.window_size) - reduced;
        const std::size_t lo = pos >= span ? pos - span : 0;
        const std::size_t hi = std::min(ids.size() - 1, pos + span);
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          const std::size_t context = ids[c];
          const std::size_t center = ids[pos];
          std::fill(grad.begin(), grad.end(), 0.0);
          update(context, center, 1.0, lr);
          for (int n = 0; n < params.negative_samples; ++n) {
            const std::size_t neg = noise.draw(rng);
            if (neg == center) continue;
            update(context, neg, 0.0, lr);
          }
          double* in = &input[context * dim];
          for (std::size_t k = 0; k < dim; ++k) in[k] += grad[k];
        }
      }
    }
  }

  return EmbeddingTable(std::move(segment), params, vocab.tokens, std::move(input));
}

void save_embeddings(std::ostream& out, const EmbeddingTable& table) {
  const auto& p = table.params();
  out << kMagic << '\n';
  out << "segment " << table.segment() << '\n';
  out << "dimension " << table.dimension() << '\n';
  out << "vocab " << table.size() << '\n';
  out << "params window_size=" << p.window_size << " min_count=" << p.min_count
      << " negative_samples=" << p.negative_samples << " epochs=" << p.epochs
      << " learning_rate=" << format_exact(p.learning_rate) << '\n';
  out << "seed " << p.seed << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.tokens()[i];
    for (double v : table.vector_at(i)) out << ' ' << format_exact(v);
    out << '\n';
  }
}

EmbeddingTable load_embeddings(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  const auto next_line = [&]() -> std::string {
    if (!std::getline(in, line)) throw Error("text", "embedding file is truncated");
    ++line_no;
    return line;
  };
  const auto field = [&](std::string_view key) -> std::string {
    const std::string l = next_line();
    if (!l.starts_with(std::string(key) + " ")) {
      throw ParseError("text", line_no, "expected '" + std::string(key) + "' header");
    }
    return l.substr(key.size() + 1);
  };
  const auto to_int = [&](const std::string& s) {
    const auto v = parse_int(s);
    if (!v) throw ParseError("text", line_no, "bad integer '" + s + "'");
    return *v;
  };

  if (next_line() != kMagic) throw ParseError("text", line_no, "not a stormsift embedding file");
  std::string segment = field("segment");
  TextModelParams p;
  p.dimension = static_cast<int>(to_int(field("dimension")));
  const auto vocab_size = static_cast<std::size_t>(to_int(field("vocab")));
  for (const auto& kv : split(field("params"), ' ')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ParseError("text", line_no, "bad params entry '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    if (key == "window_size") p.window_size = static_cast<int>(to_int(value));
    else if (key == "min_count") p.min_count = static_cast<int>(to_int(value));
    else if (key == "negative_samples") p.negative_samples = static_cast<int>(to_int(value));
    else if (key == "epochs") p.epochs = static_cast<int>(to_int(value));
    else if (key == "learning_rate") {
      const auto v = parse_double(value);
      if (!v) throw ParseError("text", line_no, "bad learning_rate");
      p.learning_rate = *v;
    } else {
      throw ParseError("text", line_no, "unknown parameter '" + key + "'");
    }
  }
  p.seed = static_cast<std::uint64_t>(to_int(field("seed")));
  p.validate();

  std::vector<std::string> tokens;
  std::vector<double> values;
  tokens.reserve(vocab_size);
  values.reserve(vocab_size * static_cast<std::size_t>(p.dimension));
  for (std::size_t i = 0; i < vocab_size; ++i) {
    const auto parts = split(next_line(), ' ');
    if (parts.size() != static_cast<std::size_t>(p.dimension) + 1) {
      throw ParseError("text", line_no,
                       "expected token and " + std::to_string(p.dimension) + " components");
    }
    tokens.push_back(parts[0]);
    for (std::size_t k = 1; k < parts.size(); ++k) {
      const auto v = parse_double(parts[k]);
      if (!v) throw ParseError("text", line_no, "bad component '" + parts[k] + "'");
      values.push_back(*v);
    }
  }
  return EmbeddingTable(std::move(segment), p, std::move(tokens), std::move(values));
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("text", "vector dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

}  // namespace stormsift::text
