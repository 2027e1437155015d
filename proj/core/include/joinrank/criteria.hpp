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

#include <array>
#include <string>
#include <vector>

#include "joinrank/candidates.hpp"
#include "joinrank/criterion.hpp"
#include "joinrank/datalake.hpp"
#include "joinrank/embedder.hpp"
#include "joinrank/indexes.hpp"
#include "joinrank/topsis.hpp"

namespace joinrank {

inline constexpr std::size_t kDefaultFrequentValues = 20;
inline constexpr std::size_t kDefaultDisjointSample = 50;

struct CriterionScore {
  double score = 0.0;
  bool applicable = true;
};

// Raw per-criterion scores of one candidate, indexed by CriterionId.
struct PreferenceVector {
  ColumnRef candidate;
  std::array<double, kCriterionCount> scores{};
  std::array<bool, kCriterionCount> applicable{};

  double operator[](CriterionId id) const { return scores[index_of(id)]; }
};

// distinct_count / total_rows, 0 for an empty column.
double unique_values_score(const ColumnProfile& profile);

// |distinct(query) ∩ distinct(cand)| over the sampled values.
std::size_t exact_intersection(const ColumnProfile& query, const ColumnProfile& cand);

// Exact: exact_intersection. Minhash: num_perm - hamming between the two
// signatures; a missing or empty-set signature scores 0, not applicable.
CriterionScore intersection_size_score(const ColumnProfile& query, const ColumnProfile& cand,
                                       const IndexBundle& bundle, SearchMode mode);

// Left-join cardinality estimate max(|Q|, |Q||T| / max(d_Q, d_T)); |Q| when
// both distinct counts are 0.
double join_size_estimate(const ColumnProfile& query, const ColumnProfile& cand);
// Right-join counterpart with lower bound |T|.
double reverse_join_size_estimate(const ColumnProfile& query, const ColumnProfile& cand);

// True when both columns are String typed.
bool semantic_criteria_apply(const ColumnProfile& query, const ColumnProfile& cand);

// Cosine similarity of the value sentences of the `frequent_n` most
// frequent values of each side.
CriterionScore value_semantics_score(const ColumnProfile& query, const ColumnProfile& cand,
                                     EmbeddingProvider& provider,
                                     std::size_t frequent_n = kDefaultFrequentValues);

// Values only in the query vs. values only in the candidate (the
// `sample_n` most frequent of each difference). 1.0 when either difference
// is empty.
CriterionScore disjoint_value_semantics_score(const ColumnProfile& query,
                                              const ColumnProfile& cand,
                                              EmbeddingProvider& provider,
                                              std::size_t sample_n = kDefaultDisjointSample);

CriterionScore metadata_semantics_score(const std::string& query_sentence,
                                        const std::string& cand_sentence,
                                        EmbeddingProvider& provider);

// The two difference sets used by the disjoint criterion, most frequent
// first, at most `sample_n` each.
std::pair<std::vector<std::string>, std::vector<std::string>> disjoint_values(
    const ColumnProfile& query, const ColumnProfile& cand, std::size_t sample_n);

// Everything the scorer needs to know about the query column.
struct QueryContext {
  ColumnProfile profile;
  std::string metadata_sentence;
  EmbeddingVector metadata_embedding;
  EmbeddingVector value_embedding;  // value sentence, for candidate generation
  bool in_lake = false;
};

struct CriteriaOptions {
  SearchMode mode = SearchMode::Exact;
  CriterionWeights weights;
  std::size_t frequent_values = kDefaultFrequentValues;
  std::size_t disjoint_sample = kDefaultDisjointSample;
};

// Criteria used for a query of `query_type`: String-only criteria are
// dropped for non-String queries, and the remaining weights renormalized.
std::vector<CriterionSpec> active_criteria(ColumnType query_type,
                                           const CriterionWeights& weights);

struct ScoredCandidates {
  DecisionMatrix matrix;                     // raw scores, active criteria only
  std::vector<PreferenceVector> preferences; // all seven criteria, row order
};

// One row per candidate. Cells of criteria that do not apply to a single
// candidate score 0. An empty candidate set gives an empty matrix.
ScoredCandidates build_decision_matrix(const QueryContext& query,
                                       const CandidateSet& candidates,
                                       const IndexBundle& bundle,
                                       EmbeddingProvider& provider,
                                       const CriteriaOptions& options);

}  // namespace joinrank
