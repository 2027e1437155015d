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

#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace joinrank {

inline constexpr std::size_t kDefaultEmbeddingDim = 1024;

// A dense embedding. Providers return unit-norm vectors, or the zero vector
// for empty text.
struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  bool is_zero() const;
  double norm() const;

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

// Scales to unit L2 norm in place; zero vectors stay zero.
void normalize_l2(EmbeddingVector& v);

// dot(a,b) / (|a| |b|), clamped to [-1, 1]; 0 if either vector is zero.
// Throws ValidationError on dimension mismatch.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

enum class ProviderKind { Builtin, Remote };

struct EmbeddingProviderConfig {
  ProviderKind kind = ProviderKind::Builtin;
  std::size_t dim = kDefaultEmbeddingDim;
  std::optional<std::string> endpoint;  // Remote only, e.g. http://host:8080
  std::chrono::milliseconds timeout{10'000};
  std::size_t batch_size = 64;
  std::size_t max_in_flight = 4;
  std::uint64_t seed = 0x6a6f696e72616e6bULL;  // Builtin hashing seed

  // Throws ConfigError when inconsistent (Remote without endpoint, dim 0).
  void validate() const;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  // One vector per input text, in input order.
  virtual std::vector<EmbeddingVector> embed(std::span<const std::string> texts) = 0;
  virtual std::size_t dim() const = 0;
  virtual ProviderKind kind() const = 0;
};

// Hashed character-trigram term frequencies. Text is folded (NFKC,
// lowercase), split into alphanumeric words, each word padded with two
// boundary markers on both sides; every code-point trigram is hashed into
// one of `dim` buckets with a hash-derived sign, and the summed vector is
// L2-normalized.
class BuiltinEmbedder final : public EmbeddingProvider {
 public:
  explicit BuiltinEmbedder(std::size_t dim = kDefaultEmbeddingDim,
                           std::uint64_t seed = EmbeddingProviderConfig{}.seed);

  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;
  EmbeddingVector embed_one(std::string_view text) const;
  std::size_t dim() const override { return dim_; }
  ProviderKind kind() const override { return ProviderKind::Builtin; }

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

// Client for the embedding wire protocol:
//   POST /embed   {"texts": [...]}  ->  {"dim": N, "vectors": [[...], ...]}
//   GET  /health  ->  {"status": "ok", "dim": N}
// Requests are batched by `batch_size`, up to `max_in_flight` concurrently,
// and each batch is retried once. Returned vectors are re-normalized.
class RemoteEmbedder final : public EmbeddingProvider {
 public:
  explicit RemoteEmbedder(EmbeddingProviderConfig config);

  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;
  std::size_t dim() const override { return config_.dim; }
  ProviderKind kind() const override { return ProviderKind::Remote; }

  // Queries /health and returns the advertised dimension.
  std::size_t health() const;

 private:
  std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts,
                                           std::size_t batch_index) const;

  EmbeddingProviderConfig config_;
  std::string host_;   // scheme://host:port
  std::string prefix_; // path prefix, no trailing slash
};

std::unique_ptr<EmbeddingProvider> make_provider(const EmbeddingProviderConfig& config);

// Convenience over make_provider(config)->embed(texts).
std::vector<EmbeddingVector> embed_texts(std::span<const std::string> texts,
                                         const EmbeddingProviderConfig& config);

std::string_view to_string(ProviderKind kind);
ProviderKind provider_kind_from_string(std::string_view name);

}  // namespace joinrank
