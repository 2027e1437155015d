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

#include "joinrank/indexes.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "joinrank/error.hpp"
#include "joinrank/hash.hpp"

namespace joinrank {
namespace {

bool by_score_then_ref(const ScoredColumn& a, const ScoredColumn& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  return a.ref < b.ref;
}

// Distinct values of a uniform `cap`-row subsample of the profile's sample.
std::vector<std::string> capped_distinct_values(const ColumnProfile& profile,
                                                std::uint64_t cap, std::uint64_t seed) {
  if (profile.sample_size <= cap || profile.summarized) {
    return profile.distinct_values();
  }
  std::uint64_t stream = hash_combine(seed, fnv1a64(to_string(profile.ref)));
  std::mt19937_64 rng(stream);
  std::vector<std::uint64_t> positions;
  positions.reserve(cap);
  // Selection sampling: sorted positions, each `cap`-subset equally likely.
  for (std::uint64_t i = 0, left = cap; i < profile.sample_size && left > 0; ++i) {
    std::uniform_int_distribution<std::uint64_t> draw(0, profile.sample_size - i - 1);
    if (draw(rng) < left) {
      positions.push_back(i);
      --left;
    }
  }

  std::vector<std::string> out;
  std::uint64_t upper = 0;
  std::size_t next = 0;
  for (const auto& vc : profile.frequent_values) {
    upper += vc.count;
    bool hit = false;
    while (next < positions.size() && positions[next] < upper) {
      hit = true;
      ++next;
    }
    if (hit) out.push_back(vc.value);
  }
  return out;
}

}  // namespace

std::string_view to_string(SearchMode mode) {
  return mode == SearchMode::Minhash ? "minhash" : "exact";
}

SearchMode search_mode_from_string(std::string_view name) {
  if (name == "exact") return SearchMode::Exact;
  if (name == "minhash") return SearchMode::Minhash;
  throw ConfigError("unknown mode '" + std::string(name) + "' (expected exact|minhash)");
}

InvertedIndex::InvertedIndex(
    std::vector<ColumnRef> columns,
    std::unordered_map<std::string, std::vector<std::uint32_t>> postings,
    std::uint64_t indexed_row_cap)
    : columns_(std::move(columns)), postings_(std::move(postings)), row_cap_(indexed_row_cap) {}

std::vector<ColumnRef> InvertedIndex::lookup(std::string_view value) const {
  std::vector<ColumnRef> out;
  auto it = postings_.find(std::string(value));
  if (it == postings_.end()) return out;
  for (auto id : it->second) out.push_back(columns_[id]);
  return out;
}

InvertedIndex build_inverted_index(const DataLakeCatalog& catalog, std::uint64_t row_cap,
                                   std::uint64_t seed) {
  if (catalog.columns.empty()) throw DataError("cannot index an empty catalog");
  if (row_cap == 0) throw ConfigError("inverted_row_cap must be positive");
  std::vector<ColumnRef> columns;
  std::unordered_map<std::string, std::vector<std::uint32_t>> postings;
  for (const auto& [ref, profile] : catalog.columns) {
    auto id = static_cast<std::uint32_t>(columns.size());
    columns.push_back(ref);
    for (auto& value : capped_distinct_values(profile, row_cap, seed)) {
      postings[std::move(value)].push_back(id);
    }
  }
  return InvertedIndex(std::move(columns), std::move(postings), row_cap);
}

std::vector<ColumnOverlap> query_overlap_topk(const InvertedIndex& index,
                                              std::span<const std::string> query_values,
                                              std::size_t k, const ColumnRef* exclude) {
  std::vector<std::size_t> counts(index.columns().size(), 0);
  std::set<std::string_view> seen;
  for (const auto& v : query_values) {
    if (!seen.insert(v).second) continue;
    auto it = index.postings().find(v);
    if (it == index.postings().end()) continue;
    for (auto id : it->second) ++counts[id];
  }
  std::vector<ColumnOverlap> out;
  for (std::size_t id = 0; id < counts.size(); ++id) {
    if (counts[id] == 0) continue;
    if (exclude && index.columns()[id] == *exclude) continue;
    out.push_back({index.columns()[id], counts[id]});
  }
  // ids are in ref order, so a stable sort on count keeps the ref tie-break.
  std::ranges::stable_sort(out, std::greater<>{}, &ColumnOverlap::overlap);
  if (out.size() > k) out.resize(k);
  return out;
}

const MinHashSignature* MinHashIndex::find(const ColumnRef& ref) const {
  auto it = signatures.find(ref);
  return it == signatures.end() ? nullptr : &it->second;
}

std::vector<HammingNeighbor> MinHashIndex::nearest(const MinHashSignature& query,
                                                   std::size_t top_n,
                                                   const ColumnRef* exclude) const {
  std::vector<HammingNeighbor> out;
  if (query.is_empty_set()) return out;
  for (const auto& [ref, sig] : signatures) {
    if (exclude && ref == *exclude) continue;
    if (sig.is_empty_set()) continue;
    out.push_back({ref, hamming_distance(query, sig)});
  }
  std::ranges::stable_sort(out, std::less<>{}, &HammingNeighbor::distance);
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

MinHashIndex build_minhash_index(const DataLakeCatalog& catalog, std::size_t num_perm,
                                 std::uint64_t seed) {
  MinHashIndex index;
  index.num_perm = num_perm;
  index.seed = seed;
  for (const auto& [ref, profile] : catalog.columns) {
    auto sig = minhash_signature(profile.distinct_values(), num_perm, seed);
    sig.ref = ref;
    index.signatures.emplace(ref, std::move(sig));
  }
  return index;
}

const EmbeddingVector* EmbeddingIndex::find(const ColumnRef& ref) const {
  auto it = std::ranges::lower_bound(entries, ref, {}, &std::pair<ColumnRef, EmbeddingVector>::first);
  if (it == entries.end() || it->first != ref) return nullptr;
  return &it->second;
}

EmbeddingIndex build_embedding_index(EmbeddingKind kind,
                                     std::vector<std::pair<ColumnRef, std::string>> texts,
                                     EmbeddingProvider& provider) {
  std::ranges::sort(texts, {}, &std::pair<ColumnRef, std::string>::first);
  std::vector<std::string> batch;
  batch.reserve(texts.size());
  for (const auto& t : texts) batch.push_back(t.second);
  auto vectors = provider.embed(batch);
  if (vectors.size() != texts.size()) {
    throw ProtocolError("embedding provider returned " + std::to_string(vectors.size()) +
                        " vectors for " + std::to_string(texts.size()) + " texts");
  }
  EmbeddingIndex index;
  index.kind = kind;
  index.dim = provider.dim();
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (vectors[i].dim() != index.dim) {
      throw ProtocolError("embedding provider returned a vector of dim " +
                          std::to_string(vectors[i].dim()) + ", expected " +
                          std::to_string(index.dim));
    }
    index.entries.emplace_back(std::move(texts[i].first), std::move(vectors[i]));
  }
  return index;
}

std::vector<ScoredColumn> knn_query(const EmbeddingIndex& index,
                                    const EmbeddingVector& query, std::size_t k,
                                    const ColumnRef* exclude) {
  if (query.dim() != index.dim) {
    throw ValidationError("knn_query: query dim " + std::to_string(query.dim()) +
                          " does not match index dim " + std::to_string(index.dim));
  }
  std::vector<ScoredColumn> scored;
  scored.reserve(index.entries.size());
  for (const auto& [ref, vec] : index.entries) {
    if (exclude && ref == *exclude) continue;
    scored.push_back({ref, cosine_similarity(query, vec)});
  }
  if (scored.size() > k) {
    std::ranges::partial_sort(scored, scored.begin() + static_cast<std::ptrdiff_t>(k),
                              by_score_then_ref);
    scored.resize(k);
  } else {
    std::ranges::sort(scored, by_score_then_ref);
  }
  return scored;
}

bool IndexBundle::supports(SearchMode mode) const {
  if (mode == SearchMode::Exact) return inverted.has_value();
  return !minhash.signatures.empty();
}

IndexBundle build_bundle(DataLakeCatalog catalog, const BundleConfig& config,
                         EmbeddingProvider& provider) {
  if (catalog.columns.empty()) throw DataError("cannot index an empty catalog");
  if (provider.dim() != config.embedding_dim || provider.kind() != config.embedder) {
    throw ConfigError("embedding provider does not match the bundle config");
  }
  IndexBundle bundle;
  bundle.config = config;
  if (config.mode == SearchMode::Exact) {
    bundle.inverted = build_inverted_index(catalog, config.inverted_row_cap, config.seed);
  }
  bundle.minhash = build_minhash_index(catalog, config.num_perm, config.seed);

  std::vector<std::pair<ColumnRef, std::string>> meta_texts;
  std::vector<std::pair<ColumnRef, std::string>> value_texts;
  for (const auto& [ref, profile] : catalog.columns) {
    meta_texts.emplace_back(ref, build_metadata_sentence(catalog, ref));
    value_texts.emplace_back(ref, build_value_sentence(profile, config.value_sentence_max));
  }
  bundle.meta_index =
      build_embedding_index(EmbeddingKind::MetadataSentence, std::move(meta_texts), provider);
  bundle.value_index =
      build_embedding_index(EmbeddingKind::ValueSentence, std::move(value_texts), provider);

  if (config.mode == SearchMode::Minhash) {
    for (auto& [ref, profile] : catalog.columns) {
      profile = summarize_profile(profile, config.summary_values);
    }
  }
  bundle.catalog = std::move(catalog);
  return bundle;
}

}  // namespace joinrank
