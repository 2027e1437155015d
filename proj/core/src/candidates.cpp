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

#include "joinrank/candidates.hpp"

#include <algorithm>

#include "joinrank/error.hpp"

namespace joinrank {
namespace {

std::vector<ColumnRef> refs_of(const std::vector<ScoredColumn>& scored) {
  std::vector<ColumnRef> out;
  out.reserve(scored.size());
  for (const auto& s : scored) out.push_back(s.ref);
  return out;
}

EmbeddingVector embed_one(EmbeddingProvider& provider, const std::string& text) {
  std::vector<std::string> batch{text};
  auto out = provider.embed(batch);
  if (out.size() != 1) throw ProtocolError("embedding provider returned no vector");
  return std::move(out.front());
}

}  // namespace

std::vector<std::string_view> Provenance::names() const {
  std::vector<std::string_view> out;
  if (has(Strategy::Syntactic)) out.push_back("syntactic");
  if (has(Strategy::Metadata)) out.push_back("metadata");
  if (has(Strategy::ValueSemantic)) out.push_back("value_semantic");
  return out;
}

MinHashSignature query_signature(const IndexBundle& bundle, const ColumnProfile& query) {
  if (bundle.catalog.contains(query.ref)) {
    if (const auto* sig = bundle.minhash.find(query.ref)) return *sig;
  }
  auto sig = minhash_signature(query.distinct_values(), bundle.minhash.num_perm,
                               bundle.minhash.seed);
  sig.ref = query.ref;
  return sig;
}

std::vector<ColumnRef> syntactic_candidates(const IndexBundle& bundle,
                                            const ColumnProfile& query,
                                            std::size_t top_n, SearchMode mode) {
  if (!bundle.supports(mode)) {
    throw ConfigError("bundle was built in " + std::string(to_string(bundle.config.mode)) +
                      " mode and cannot serve " + std::string(to_string(mode)) +
                      " searches");
  }
  std::vector<ColumnRef> out;
  if (mode == SearchMode::Exact) {
    for (auto& hit : query_overlap_topk(*bundle.inverted, query.distinct_values(), top_n,
                                        &query.ref)) {
      out.push_back(std::move(hit.ref));
    }
  } else {
    for (auto& hit : bundle.minhash.nearest(query_signature(bundle, query), top_n,
                                            &query.ref)) {
      out.push_back(std::move(hit.ref));
    }
  }
  return out;
}

std::vector<ColumnRef> metadata_candidates(const IndexBundle& bundle,
                                           const EmbeddingVector& query_embedding,
                                           std::size_t top_n, const ColumnRef& query) {
  return refs_of(knn_query(bundle.meta_index, query_embedding, top_n, &query));
}

std::vector<ColumnRef> metadata_candidates(const IndexBundle& bundle,
                                           const std::string& query_sentence,
                                           std::size_t top_n, const ColumnRef& query,
                                           EmbeddingProvider& provider) {
  return metadata_candidates(bundle, embed_one(provider, query_sentence), top_n, query);
}

std::vector<ColumnRef> value_candidates(const IndexBundle& bundle,
                                        const EmbeddingVector& query_embedding,
                                        std::size_t top_n, const ColumnRef& query) {
  return refs_of(knn_query(bundle.value_index, query_embedding, top_n, &query));
}

std::vector<ColumnRef> value_candidates(const IndexBundle& bundle,
                                        const std::string& query_value_sentence,
                                        std::size_t top_n, const ColumnRef& query,
                                        EmbeddingProvider& provider) {
  return value_candidates(bundle, embed_one(provider, query_value_sentence), top_n, query);
}

CandidateSet merge_candidates(const std::vector<ColumnRef>& syntactic,
                              const std::vector<ColumnRef>& metadata,
                              const std::vector<ColumnRef>& value_semantic,
                              const ColumnRef& query) {
  CandidateSet set;
  set.query = query;
  auto tag = [&](const std::vector<ColumnRef>& list, Strategy s) {
    for (const auto& ref : list) {
      if (ref == query) continue;
      set.provenance[ref].add(s);
    }
  };
  tag(syntactic, Strategy::Syntactic);
  tag(metadata, Strategy::Metadata);
  tag(value_semantic, Strategy::ValueSemantic);

  for (const auto& [ref, prov] : set.provenance) set.candidates.push_back(ref);
  // provenance map iterates in ref order; stable sort keeps it as tie-break.
  std::ranges::stable_sort(set.candidates, std::greater<>{}, [&](const ColumnRef& r) {
    return set.provenance.at(r).count();
  });
  return set;
}

}  // namespace joinrank
