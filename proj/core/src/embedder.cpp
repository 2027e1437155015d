// Copyright 2026 The joinrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "joinrank/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <unicode/uchar.h>

#include "joinrank/error.hpp"
#include "joinrank/hash.hpp"
#include "joinrank/text.hpp"

namespace joinrank {
namespace {

constexpr char32_t kBoundary = U'\u0002';

bool is_word_char(char32_t cp) {
  return u_isalnum(static_cast<UChar32>(cp)) != 0;
}

}  // namespace

bool EmbeddingVector::is_zero() const {
  return std::ranges::all_of(values, [](double x) { return x == 0.0; });
}

double EmbeddingVector::norm() const {
  double sum = 0.0;
  for (double x : values) sum += x * x;
  return std::sqrt(sum);
}

void normalize_l2(EmbeddingVector& v) {
  double n = v.norm();
  if (n == 0.0 || !std::isfinite(n)) return;
  for (double& x : v.values) x /= n;
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw ValidationError("cosine_similarity: dimension mismatch (" +
                          std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()) + ")");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

void EmbeddingProviderConfig::validate() const {
  if (dim == 0) throw ConfigError("embedding dim must be positive");
  if (batch_size == 0) throw ConfigError("embedding batch_size must be positive");
  if (max_in_flight == 0) throw ConfigError("embedding max_in_flight must be positive");
  if (kind == ProviderKind::Remote && (!endpoint || endpoint->empty())) {
    throw ConfigError("remote embedder requires an endpoint");
  }
}

BuiltinEmbedder::BuiltinEmbedder(std::size_t dim, std::uint64_t seed)
    : dim_(dim), seed_(seed) {
  if (dim_ == 0) throw ConfigError("embedding dim must be positive");
}

EmbeddingVector BuiltinEmbedder::embed_one(std::string_view text) const {
  EmbeddingVector out;
  out.values.assign(dim_, 0.0);
  std::vector<char32_t> cps = decode_utf8(fold_text(text));

  std::vector<char32_t> word;
  auto flush = [&] {
    if (word.empty()) return;
    std::vector<char32_t> padded{kBoundary, kBoundary};
    padded.insert(padded.end(), word.begin(), word.end());
    padded.push_back(kBoundary);
    padded.push_back(kBoundary);
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
      std::string gram;
      for (std::size_t k = i; k < i + 3; ++k) append_utf8(gram, padded[k]);
      // Signed feature hashing: the top bit picks the sign, so bucket
      // collisions cancel on average instead of inflating similarity.
      const std::uint64_t h = hash_combine(seed_, fnv1a64(gram));
      out.values[h % dim_] += (h >> 63) ? -1.0 : 1.0;
    }
    word.clear();
  };
  for (char32_t cp : cps) {
    if (is_word_char(cp)) {
      word.push_back(cp);
    } else {
      flush();
    }
  }
  flush();
  normalize_l2(out);
  return out;
}

std::vector<EmbeddingVector> BuiltinEmbedder::embed(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed_one(t));
  return out;
}

std::unique_ptr<EmbeddingProvider> make_provider(const EmbeddingProviderConfig& config) {
  config.validate();
  if (config.kind == ProviderKind::Remote) {
    return std::make_unique<RemoteEmbedder>(config);
  }
  return std::make_unique<BuiltinEmbedder>(config.dim, config.seed);
}

std::vector<EmbeddingVector> embed_texts(std::span<const std::string> texts,
                                         const EmbeddingProviderConfig& config) {
  return make_provider(config)->embed(texts);
}

std::string_view to_string(ProviderKind kind) {
  return kind == ProviderKind::Remote ? "remote" : "builtin";
}

ProviderKind provider_kind_from_string(std::string_view name) {
  if (name == "builtin") return ProviderKind::Builtin;
  if (name == "remote") return ProviderKind::Remote;
  throw ConfigError("unknown embedder kind '" + std::string(name) + "'");
}

}  // namespace joinrank
