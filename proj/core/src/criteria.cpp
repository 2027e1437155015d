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

#include "joinrank/criteria.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "joinrank/error.hpp"

namespace joinrank {
namespace {

std::unordered_set<std::string_view> value_set(const ColumnProfile& p) {
  std::unordered_set<std::string_view> out;
  out.reserve(p.frequent_values.size());
  for (const auto& vc : p.frequent_values) out.insert(vc.value);
  return out;
}

std::vector<std::string> difference(const ColumnProfile& from,
                                    const std::unordered_set<std::string_view>& other,
                                    std::size_t n) {
  std::vector<std::string> out;
  for (const auto& vc : from.frequent_values) {
    if (out.size() >= n) break;
    if (!other.contains(vc.value)) out.push_back(vc.value);
  }
  return out;
}

double pair_cosine(EmbeddingProvider& provider, const std::string& a, const std::string& b) {
  std::vector<std::string> batch{a, b};
  auto v = provider.embed(batch);
  if (v.size() != 2) throw ProtocolError("embedding provider returned a short batch");
  return cosine_similarity(v[0], v[1]);
}

// Deduplicating text batch for one provider call.
class TextBatch {
 public:
  std::size_t add(const std::string& text) {
    auto [it, inserted] = slots_.try_emplace(text, texts_.size());
    if (inserted) texts_.push_back(text);
    return it->second;
  }
  std::vector<EmbeddingVector> embed(EmbeddingProvider& provider) const {
    if (texts_.empty()) return {};
    auto out = provider.embed(texts_);
    if (out.size() != texts_.size()) {
      throw ProtocolError("embedding provider returned " + std::to_string(out.size()) +
                          " vectors for " + std::to_string(texts_.size()) + " texts");
    }
    return out;
  }

 private:
  std::map<std::string, std::size_t> slots_;
  std::vector<std::string> texts_;
};

}  // namespace

double unique_values_score(const ColumnProfile& profile) {
  if (profile.total_rows == 0) return 0.0;
  return std::min(1.0, static_cast<double>(profile.distinct_count) /
                           static_cast<double>(profile.total_rows));
}

std::size_t exact_intersection(const ColumnProfile& query, const ColumnProfile& cand) {
  const auto& small = query.frequent_values.size() <= cand.frequent_values.size() ? query : cand;
  const auto& large = &small == &query ? cand : query;
  auto set = value_set(large);
  std::size_t n = 0;
  for (const auto& vc : small.frequent_values) n += set.contains(vc.value);
  return n;
}

CriterionScore intersection_size_score(const ColumnProfile& query, const ColumnProfile& cand,
                                       const IndexBundle& bundle, SearchMode mode) {
  if (mode == SearchMode::Exact) {
    return {static_cast<double>(exact_intersection(query, cand)), true};
  }
  const MinHashSignature* cand_sig = bundle.minhash.find(cand.ref);
  if (cand_sig == nullptr || cand_sig->is_empty_set()) return {0.0, false};
  auto query_sig = query_signature(bundle, query);
  if (query_sig.is_empty_set()) return {0.0, false};
  return {static_cast<double>(query_sig.num_perm() - hamming_distance(query_sig, *cand_sig)),
          true};
}

double join_size_estimate(const ColumnProfile& query, const ColumnProfile& cand) {
  const double q = static_cast<double>(query.total_rows);
  const double t = static_cast<double>(cand.total_rows);
  const double d = static_cast<double>(std::max(query.distinct_count, cand.distinct_count));
  if (d == 0.0) return q;
  return std::max(q, q * t / d);
}

double reverse_join_size_estimate(const ColumnProfile& query, const ColumnProfile& cand) {
  const double q = static_cast<double>(query.total_rows);
  const double t = static_cast<double>(cand.total_rows);
  const double d = static_cast<double>(std::max(query.distinct_count, cand.distinct_count));
  if (d == 0.0) return t;
  return std::max(t, q * t / d);
}

bool semantic_criteria_apply(const ColumnProfile& query, const ColumnProfile& cand) {
  return query.inferred_type == ColumnType::String && cand.inferred_type == ColumnType::String;
}

std::pair<std::vector<std::string>, std::vector<std::string>> disjoint_values(
    const ColumnProfile& query, const ColumnProfile& cand, std::size_t sample_n) {
  return {difference(query, value_set(cand), sample_n),
          difference(cand, value_set(query), sample_n)};
}

CriterionScore value_semantics_score(const ColumnProfile& query, const ColumnProfile& cand,
                                     EmbeddingProvider& provider, std::size_t frequent_n) {
  if (!semantic_criteria_apply(query, cand)) return {0.0, false};
  try {
    return {pair_cosine(provider, build_value_sentence(query, frequent_n),
                        build_value_sentence(cand, frequent_n)),
            true};
  } catch (const ProviderError&) {
    return {0.0, false};
  }
}

CriterionScore disjoint_value_semantics_score(const ColumnProfile& query,
                                              const ColumnProfile& cand,
                                              EmbeddingProvider& provider,
                                              std::size_t sample_n) {
  if (!semantic_criteria_apply(query, cand)) return {0.0, false};
  auto [only_query, only_cand] = disjoint_values(query, cand, sample_n);
  if (only_query.empty() || only_cand.empty()) return {1.0, true};
  try {
    return {pair_cosine(provider, build_value_sentence(only_query),
                        build_value_sentence(only_cand)),
            true};
  } catch (const ProviderError&) {
    return {0.0, false};
  }
}

CriterionScore metadata_semantics_score(const std::string& query_sentence,
                                        const std::string& cand_sentence,
                                        EmbeddingProvider& provider) {
  try {
    return {pair_cosine(provider, query_sentence, cand_sentence), true};
  } catch (const ProviderError&) {
    return {0.0, false};
  }
}

std::vector<CriterionSpec> active_criteria(ColumnType query_type,
                                           const CriterionWeights& weights) {
  std::vector<CriterionSpec> out;
  for (auto id : kAllCriteria) {
    if (string_only(id) && query_type != ColumnType::String) continue;
    out.push_back({id, default_direction(id), weights[id]});
  }
  renormalize_weights(out);
  return out;
}

ScoredCandidates build_decision_matrix(const QueryContext& query,
                                       const CandidateSet& candidates,
                                       const IndexBundle& bundle,
                                       EmbeddingProvider& provider,
                                       const CriteriaOptions& options) {
  ScoredCandidates out;
  out.matrix.criteria = active_criteria(query.profile.inferred_type, options.weights);
  if (candidates.empty()) return out;

  const ColumnProfile& q = query.profile;
  std::optional<MinHashSignature> q_sig;
  if (options.mode == SearchMode::Minhash) q_sig = query_signature(bundle, q);
  const auto q_values = value_set(q);

  // Semantic texts are embedded in one batch; slot indexes per candidate.
  struct Pending {
    std::size_t value_q = 0, value_c = 0, disjoint_q = 0, disjoint_c = 0, meta_c = 0;
    bool semantic = false, disjoint_contained = false, meta_cached = false;
  };
  TextBatch batch;
  const std::size_t q_value_slot = batch.add(build_value_sentence(q, options.frequent_values));
  std::vector<Pending> pending(candidates.size());

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const ColumnRef& ref = candidates.candidates[i];
    const ColumnProfile& c = bundle.catalog.profile(ref);
    PreferenceVector pv;
    pv.candidate = ref;
    pv.applicable.fill(true);

    pv.scores[index_of(CriterionId::UniqueValues)] = unique_values_score(c);

    CriterionScore inter;
    if (options.mode == SearchMode::Exact) {
      std::size_t n = 0;
      for (const auto& vc : c.frequent_values) n += q_values.contains(vc.value);
      inter = {static_cast<double>(n), true};
    } else {
      const MinHashSignature* c_sig = bundle.minhash.find(ref);
      if (!q_sig->is_empty_set() && c_sig && !c_sig->is_empty_set()) {
        inter = {static_cast<double>(q_sig->num_perm() - hamming_distance(*q_sig, *c_sig)),
                 true};
      } else {
        inter = {0.0, false};
      }
    }
    pv.scores[index_of(CriterionId::IntersectionSize)] = inter.score;
    pv.applicable[index_of(CriterionId::IntersectionSize)] = inter.applicable;

    pv.scores[index_of(CriterionId::JoinSize)] = join_size_estimate(q, c);
    pv.scores[index_of(CriterionId::ReverseJoinSize)] = reverse_join_size_estimate(q, c);

    Pending& p = pending[i];
    p.semantic = semantic_criteria_apply(q, c);
    if (p.semantic) {
      p.value_q = q_value_slot;
      p.value_c = batch.add(build_value_sentence(c, options.frequent_values));
      auto [only_q, only_c] = disjoint_values(q, c, options.disjoint_sample);
      p.disjoint_contained = only_q.empty() || only_c.empty();
      if (!p.disjoint_contained) {
        p.disjoint_q = batch.add(build_value_sentence(only_q));
        p.disjoint_c = batch.add(build_value_sentence(only_c));
      }
    } else {
      pv.applicable[index_of(CriterionId::ValueSemantics)] = false;
      pv.applicable[index_of(CriterionId::DisjointValueSemantics)] = false;
    }
    p.meta_cached = bundle.meta_index.find(ref) != nullptr &&
                    bundle.meta_index.dim == query.metadata_embedding.dim();
    if (!p.meta_cached) p.meta_c = batch.add(build_metadata_sentence(bundle.catalog, ref));
    out.preferences.push_back(std::move(pv));
  }

  std::vector<EmbeddingVector> vectors;
  bool provider_ok = true;
  try {
    vectors = batch.embed(provider);
  } catch (const ProviderError&) {
    provider_ok = false;
  }

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    PreferenceVector& pv = out.preferences[i];
    const Pending& p = pending[i];
    auto set = [&](CriterionId id, double score, bool ok) {
      pv.scores[index_of(id)] = ok ? score : 0.0;
      pv.applicable[index_of(id)] = ok;
    };
    if (p.semantic) {
      set(CriterionId::ValueSemantics,
          provider_ok ? cosine_similarity(vectors[p.value_q], vectors[p.value_c]) : 0.0,
          provider_ok);
      if (p.disjoint_contained) {
        set(CriterionId::DisjointValueSemantics, 1.0, true);
      } else {
        set(CriterionId::DisjointValueSemantics,
            provider_ok ? cosine_similarity(vectors[p.disjoint_q], vectors[p.disjoint_c])
                        : 0.0,
            provider_ok);
      }
    }
    if (p.meta_cached) {
      set(CriterionId::MetadataSemantics,
          cosine_similarity(query.metadata_embedding,
                            *bundle.meta_index.find(pv.candidate)),
          !query.metadata_embedding.values.empty());
    } else {
      set(CriterionId::MetadataSemantics,
          provider_ok ? cosine_similarity(query.metadata_embedding, vectors[p.meta_c]) : 0.0,
          provider_ok);
    }
  }

  for (const auto& pv : out.preferences) {
    out.matrix.rows.push_back(pv.candidate);
    std::vector<double> row;
    row.reserve(out.matrix.criteria.size());
    for (const auto& spec : out.matrix.criteria) row.push_back(pv[spec.id]);
    out.matrix.scores.push_back(std::move(row));
  }
  return out;
}

}  // namespace joinrank
