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
#include <set>
#include <span>
#include <string>
#include <vector>

#include "joinrank/column_ref.hpp"

namespace joinrank {

inline constexpr std::size_t kDefaultEvalK = 10;

// Exact non-negative rational, always reduced.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t n, std::int64_t d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, std::int64_t d);
};

std::string to_string(const Fraction& f);

struct GroundTruth {
  // Every query that appears in the truth file, including ones whose pairs
  // are all labelled 0 (their relevant set is empty).
  std::map<ColumnRef, std::set<ColumnRef>> relevant;
};

// JSON Lines: {"query_table", "query_column", "target_table",
// "target_column", "label": 0|1}. A ".csv" suffix on table names is
// stripped. Throws DataError with the 1-based line number on bad input.
GroundTruth parse_ground_truth(std::string_view text, std::string_view source = "<truth>");
GroundTruth load_ground_truth(const std::filesystem::path& path);

// 1/rank of the first relevant item within the top k, else 0.
Fraction reciprocal_rank(std::span<const ColumnRef> ranking,
                         const std::set<ColumnRef>& relevant, std::size_t k);
// Sum of precision@p over relevant positions p <= k, divided by
// min(|relevant|, k).
Fraction average_precision(std::span<const ColumnRef> ranking,
                           const std::set<ColumnRef>& relevant, std::size_t k);
// |top-k ∩ relevant| / |relevant|.
Fraction recall_at_k(std::span<const ColumnRef> ranking,
                     const std::set<ColumnRef>& relevant, std::size_t k);

struct QueryEval {
  ColumnRef query;
  Fraction reciprocal_rank;
  Fraction average_precision;
  Fraction recall;
  bool empty_relevant = false;    // excluded from the means
  bool missing_results = false;   // no ranking supplied; metrics are 0
  std::vector<ColumnRef> unindexed_targets;  // kept, counted as misses
};

struct EvalReport {
  std::size_t k = kDefaultEvalK;
  std::vector<QueryEval> per_query;
  std::size_t evaluated = 0;  // queries included in the means
  double mrr = 0.0;
  double map = 0.0;
  double recall = 0.0;
  // Exact means; nullopt only if the rational sum would overflow.
  std::optional<Fraction> mrr_exact, map_exact, recall_exact;
};

using ResultsByQuery = std::map<ColumnRef, std::vector<ColumnRef>>;

// `indexed`, when given, is used to flag relevant targets missing from the
// lake.
EvalReport evaluate(const ResultsByQuery& results, const GroundTruth& truth, std::size_t k,
                    const std::set<ColumnRef>* indexed = nullptr);

std::string report_to_json(const EvalReport& report, int indent = 2);
std::string report_to_table(const EvalReport& report);

}  // namespace joinrank
