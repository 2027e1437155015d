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

#include <optional>
#include <string>
#include <vector>

#include "joinrank/candidates.hpp"
#include "joinrank/criteria.hpp"
#include "joinrank/csv.hpp"
#include "joinrank/datalake.hpp"
#include "joinrank/embedder.hpp"
#include "joinrank/eval.hpp"
#include "joinrank/indexes.hpp"
#include "joinrank/topsis.hpp"

namespace joinrank {

struct SearchOptions {
  std::size_t k = kDefaultEvalK;
  std::size_t top_n = kDefaultTopN;  // per candidate strategy
  std::optional<SearchMode> mode;    // defaults to the bundle's mode
  CriterionWeights weights;
  std::size_t frequent_values = kDefaultFrequentValues;
  std::size_t disjoint_sample = kDefaultDisjointSample;
};

// Effective configuration, echoed into every report.
struct EngineConfig {
  BundleConfig bundle;
  SearchOptions search;
};

struct RankedRow {
  std::size_t rank = 0;  // 1-based
  ColumnRef ref;
  double closeness = 0.0;
  PreferenceVector scores;
  Provenance provenance;
};

struct RankedResult {
  ColumnRef query;
  SearchMode mode = SearchMode::Exact;
  std::vector<CriterionSpec> criteria;  // active, renormalized
  std::size_t candidate_count = 0;
  std::vector<RankedRow> rows;
};

class SearchEngine {
 public:
  // Both must outlive the engine.
  SearchEngine(const IndexBundle& bundle, EmbeddingProvider& provider);

  const IndexBundle& bundle() const { return bundle_; }

  // Context for a column of the indexed lake; throws DataError if absent.
  QueryContext lake_query(const ColumnRef& ref) const;

  // Context for a column of a table outside the lake, profiled with the
  // bundle's sampling settings.
  QueryContext external_query(const CsvTable& table, const TableMeta& meta,
                              const std::string& column) const;

  // Candidates from the three strategies, scored and ranked; at most k rows.
  RankedResult search(const QueryContext& query, const SearchOptions& options) const;
  RankedResult search(const ColumnRef& query, const SearchOptions& options) const;

 private:
  const IndexBundle& bundle_;
  EmbeddingProvider& provider_;
};

std::string engine_config_to_json(const EngineConfig& config, int indent = -1);
std::string result_to_json(const RankedResult& result, const EngineConfig& config,
                           int indent = 2);
std::string result_to_table(const RankedResult& result);

// Column names of the catalog closest to `wanted` by edit distance, as
// "table.column" strings, at most `n`.
std::vector<std::string> nearest_columns(const DataLakeCatalog& catalog,
                                         const std::string& wanted, std::size_t n = 5);

}  // namespace joinrank
