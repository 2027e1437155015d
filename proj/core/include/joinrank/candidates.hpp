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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "joinrank/column_ref.hpp"
#include "joinrank/datalake.hpp"
#include "joinrank/embedder.hpp"
#include "joinrank/indexes.hpp"

namespace joinrank {

inline constexpr std::size_t kDefaultTopN = 100;

enum class Strategy : std::uint8_t { Syntactic = 1, Metadata = 2, ValueSemantic = 4 };

// Which strategies proposed a candidate.
struct Provenance {
  std::uint8_t bits = 0;

  void add(Strategy s) { bits |= static_cast<std::uint8_t>(s); }
  bool has(Strategy s) const { return bits & static_cast<std::uint8_t>(s); }
  int count() const { return __builtin_popcount(bits); }
  std::vector<std::string_view> names() const;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct CandidateSet {
  ColumnRef query;
  std::vector<ColumnRef> candidates;  // provenance count desc, then ref
  std::map<ColumnRef, Provenance> provenance;

  bool empty() const { return candidates.empty(); }
  std::size_t size() const { return candidates.size(); }
};

// The query's signature: looked up in the bundle for lake columns, computed
// from the profile's distinct values otherwise.
MinHashSignature query_signature(const IndexBundle& bundle, const ColumnProfile& query);

// Exact mode: top_n columns by distinct-value overlap in the inverted index.
// Minhash mode: top_n columns by ascending hamming distance. Throws
// ConfigError when the bundle cannot serve `mode`.
std::vector<ColumnRef> syntactic_candidates(const IndexBundle& bundle,
                                            const ColumnProfile& query,
                                            std::size_t top_n, SearchMode mode);

std::vector<ColumnRef> metadata_candidates(const IndexBundle& bundle,
                                           const EmbeddingVector& query_embedding,
                                           std::size_t top_n, const ColumnRef& query);
std::vector<ColumnRef> metadata_candidates(const IndexBundle& bundle,
                                           const std::string& query_sentence,
                                           std::size_t top_n, const ColumnRef& query,
                                           EmbeddingProvider& provider);

std::vector<ColumnRef> value_candidates(const IndexBundle& bundle,
                                        const EmbeddingVector& query_embedding,
                                        std::size_t top_n, const ColumnRef& query);
std::vector<ColumnRef> value_candidates(const IndexBundle& bundle,
                                        const std::string& query_value_sentence,
                                        std::size_t top_n, const ColumnRef& query,
                                        EmbeddingProvider& provider);

// Union of the three lists with provenance tags; the query is dropped.
CandidateSet merge_candidates(const std::vector<ColumnRef>& syntactic,
                              const std::vector<ColumnRef>& metadata,
                              const std::vector<ColumnRef>& value_semantic,
                              const ColumnRef& query);

}  // namespace joinrank
