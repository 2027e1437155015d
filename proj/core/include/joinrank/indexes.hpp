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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "joinrank/column_ref.hpp"
#include "joinrank/datalake.hpp"
#include "joinrank/embedder.hpp"
#include "joinrank/minhash.hpp"

namespace joinrank {

inline constexpr std::uint64_t kDefaultInvertedRowCap = 10'000;
inline constexpr std::size_t kDefaultSummaryValues = 64;
inline constexpr int kBundleFormatVersion = 1;

enum class SearchMode { Exact, Minhash };

std::string_view to_string(SearchMode mode);
SearchMode search_mode_from_string(std::string_view name);

// ---------------------------------------------------------------------------
// Inverted index: normalized value -> columns containing it.

struct ColumnOverlap {
  ColumnRef ref;
  std::size_t overlap = 0;

  friend bool operator==(const ColumnOverlap&, const ColumnOverlap&) = default;
};

class InvertedIndex {
 public:
  InvertedIndex() = default;
  InvertedIndex(std::vector<ColumnRef> columns,
                std::unordered_map<std::string, std::vector<std::uint32_t>> postings,
                std::uint64_t indexed_row_cap);

  // Sorted ColumnRefs; posting lists hold positions into this vector, so
  // sorted ids are sorted refs.
  const std::vector<ColumnRef>& columns() const { return columns_; }
  const std::unordered_map<std::string, std::vector<std::uint32_t>>& postings() const {
    return postings_;
  }
  std::uint64_t indexed_row_cap() const { return row_cap_; }

  // Columns holding `value`, ascending. Empty when absent.
  std::vector<ColumnRef> lookup(std::string_view value) const;

  friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;

 private:
  std::vector<ColumnRef> columns_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> postings_;
  std::uint64_t row_cap_ = kDefaultInvertedRowCap;
};

// Each column contributes the distinct values of at most `row_cap` of its
// sampled rows (a seeded uniform subsample when larger).
InvertedIndex build_inverted_index(const DataLakeCatalog& catalog,
                                   std::uint64_t row_cap = kDefaultInvertedRowCap,
                                   std::uint64_t seed = kDefaultSeed);

// Ranks columns by the number of distinct `query_values` they contain,
// descending, ties by ref. Columns with zero overlap and `exclude` are left
// out; at most k entries.
std::vector<ColumnOverlap> query_overlap_topk(const InvertedIndex& index,
                                              std::span<const std::string> query_values,
                                              std::size_t k,
                                              const ColumnRef* exclude = nullptr);

// ---------------------------------------------------------------------------
// MinHash signatures per column.

struct HammingNeighbor {
  ColumnRef ref;
  std::size_t distance = 0;
};

struct MinHashIndex {
  std::size_t num_perm = kDefaultNumPerm;
  std::uint64_t seed = kDefaultSeed;
  std::map<ColumnRef, MinHashSignature> signatures;

  const MinHashSignature* find(const ColumnRef& ref) const;

  // Ascending hamming distance, ties by ref. Empty-set signatures (query or
  // candidate) never match.
  std::vector<HammingNeighbor> nearest(const MinHashSignature& query, std::size_t top_n,
                                       const ColumnRef* exclude = nullptr) const;

  friend bool operator==(const MinHashIndex&, const MinHashIndex&) = default;
};

MinHashIndex build_minhash_index(const DataLakeCatalog& catalog,
                                 std::size_t num_perm = kDefaultNumPerm,
                                 std::uint64_t seed = kDefaultSeed);

// ---------------------------------------------------------------------------
// Exhaustive embedding index.

enum class EmbeddingKind { MetadataSentence, ValueSentence };

struct ScoredColumn {
  ColumnRef ref;
  double similarity = 0.0;
};

struct EmbeddingIndex {
  EmbeddingKind kind = EmbeddingKind::MetadataSentence;
  std::size_t dim = 0;
  std::vector<std::pair<ColumnRef, EmbeddingVector>> entries;  // sorted by ref

  const EmbeddingVector* find(const ColumnRef& ref) const;

  friend bool operator==(const EmbeddingIndex&, const EmbeddingIndex&) = default;
};

EmbeddingIndex build_embedding_index(EmbeddingKind kind,
                                     std::vector<std::pair<ColumnRef, std::string>> texts,
                                     EmbeddingProvider& provider);

// Exact top-k by cosine similarity (descending, ties by ref), `exclude`
// skipped. Throws ValidationError when dims differ.
std::vector<ScoredColumn> knn_query(const EmbeddingIndex& index,
                                    const EmbeddingVector& query, std::size_t k,
                                    const ColumnRef* exclude = nullptr);

// ---------------------------------------------------------------------------
// Bundle: everything a search needs, persisted as one directory.

struct BundleConfig {
  int format_version = kBundleFormatVersion;
  SearchMode mode = SearchMode::Exact;
  std::uint64_t sample_cap = kDefaultSampleCap;
  std::uint64_t inverted_row_cap = kDefaultInvertedRowCap;
  std::size_t num_perm = kDefaultNumPerm;
  std::uint64_t seed = kDefaultSeed;
  std::size_t value_sentence_max = kDefaultValueSentenceMax;
  std::size_t summary_values = kDefaultSummaryValues;  // Minhash mode only
  ProviderKind embedder = ProviderKind::Builtin;
  std::size_t embedding_dim = kDefaultEmbeddingDim;
  std::uint64_t embedding_seed = EmbeddingProviderConfig{}.seed;

  friend bool operator==(const BundleConfig&, const BundleConfig&) = default;
};

struct IndexBundle {
  BundleConfig config;
  DataLakeCatalog catalog;
  std::optional<InvertedIndex> inverted;
  MinHashIndex minhash;
  EmbeddingIndex meta_index;
  EmbeddingIndex value_index;

  bool supports(SearchMode mode) const;

  friend bool operator==(const IndexBundle&, const IndexBundle&) = default;
};

// Builds all indexes. Exact mode keeps the inverted index and full
// profiles; Minhash mode drops the inverted index and summarizes profiles
// to their `summary_values` most frequent values.
IndexBundle build_bundle(DataLakeCatalog catalog, const BundleConfig& config,
                         EmbeddingProvider& provider);

// Writes catalog.json, config.json, minhash.bin, meta_embeddings.bin,
// value_embeddings.bin and (Exact mode) inverted.bin into `dir`.
void persist_bundle(const IndexBundle& bundle, const std::filesystem::path& dir);
IndexBundle load_bundle(const std::filesystem::path& dir);

std::string config_to_json(const BundleConfig& config, int indent = -1);
BundleConfig config_from_json(std::string_view text,
                              std::string_view source = "config.json");

}  // namespace joinrank
