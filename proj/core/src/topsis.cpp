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

#include "joinrank/topsis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "joinrank/error.hpp"

namespace joinrank {

std::string_view to_string(CriterionId id) {
  switch (id) {
    case CriterionId::UniqueValues: return "unique_values";
    case CriterionId::IntersectionSize: return "intersection_size";
    case CriterionId::JoinSize: return "join_size";
    case CriterionId::ReverseJoinSize: return "reverse_join_size";
    case CriterionId::ValueSemantics: return "value_semantics";
    case CriterionId::DisjointValueSemantics: return "disjoint_value_semantics";
    case CriterionId::MetadataSemantics: return "metadata_semantics";
  }
  return "unknown";
}

CriterionId criterion_from_string(std::string_view name) {
  for (auto id : kAllCriteria) {
    if (to_string(id) == name) return id;
  }
  throw ConfigError("unknown criterion '" + std::string(name) + "'");
}

void renormalize_weights(std::vector<CriterionSpec>& criteria) {
  double sum = 0.0;
  for (const auto& c : criteria) {
    if (!(c.weight >= 0.0) || !std::isfinite(c.weight)) {
      throw ValidationError("criterion '" + std::string(to_string(c.id)) +
                            "' has an invalid weight");
    }
    sum += c.weight;
  }
  if (!(sum > 0.0)) throw ValidationError("criterion weights sum to zero");
  for (auto& c : criteria) c.weight /= sum;
}

void validate(const DecisionMatrix& m) {
  if (m.rows.empty()) throw ValidationError("decision matrix has no rows");
  if (m.criteria.empty()) throw ValidationError("decision matrix has no criteria");
  if (m.scores.size() != m.rows.size()) {
    throw ValidationError("decision matrix has " + std::to_string(m.rows.size()) +
                          " row refs but " + std::to_string(m.scores.size()) +
                          " score rows");
  }
  for (std::size_t i = 0; i < m.scores.size(); ++i) {
    if (m.scores[i].size() != m.criteria.size()) {
      throw ValidationError("decision matrix row " + std::to_string(i) + " (" +
                            to_string(m.rows[i]) + ") has " +
                            std::to_string(m.scores[i].size()) + " scores, expected " +
                            std::to_string(m.criteria.size()));
    }
    for (std::size_t j = 0; j < m.criteria.size(); ++j) {
      if (!std::isfinite(m.scores[i][j])) {
        throw ValidationError("decision matrix row " + std::to_string(i) + " (" +
                              to_string(m.rows[i]) + "), criterion " +
                              std::to_string(j) + " (" +
                              std::string(to_string(m.criteria[j].id)) +
                              ") is not finite");
      }
    }
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < m.criteria.size(); ++j) {
    double w = m.criteria[j].weight;
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ValidationError("criterion " + std::to_string(j) + " (" +
                            std::string(to_string(m.criteria[j].id)) +
                            ") has an invalid weight");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError("criterion weights sum to " + std::to_string(sum) +
                          ", expected 1");
  }
}

TopsisResult topsis_rank(const DecisionMatrix& m) {
  validate(m);
  const std::size_t rows = m.row_count();
  const std::size_t cols = m.criterion_count();

  std::vector<std::vector<double>> weighted(rows, std::vector<double>(cols, 0.0));
  for (std::size_t j = 0; j < cols; ++j) {
    double sq = 0.0;
    for (std::size_t i = 0; i < rows; ++i) sq += m.scores[i][j] * m.scores[i][j];
    const double norm = std::sqrt(sq);
    if (norm == 0.0) continue;
    for (std::size_t i = 0; i < rows; ++i) {
      weighted[i][j] = m.criteria[j].weight * (m.scores[i][j] / norm);
    }
  }

  TopsisResult result;
  result.ideal.resize(cols);
  result.anti_ideal.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double lo = weighted[0][j];
    double hi = weighted[0][j];
    for (std::size_t i = 1; i < rows; ++i) {
      lo = std::min(lo, weighted[i][j]);
      hi = std::max(hi, weighted[i][j]);
    }
    const bool benefit = m.criteria[j].direction == Direction::Benefit;
    result.ideal[j] = benefit ? hi : lo;
    result.anti_ideal[j] = benefit ? lo : hi;
  }

  result.ranking.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    double plus = 0.0;
    double minus = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      const double dp = weighted[i][j] - result.ideal[j];
      const double dm = weighted[i][j] - result.anti_ideal[j];
      plus += dp * dp;
      minus += dm * dm;
    }
    plus = std::sqrt(plus);
    minus = std::sqrt(minus);
    const double total = plus + minus;
    const double closeness = total == 0.0 ? 0.5 : minus / total;
    result.ranking.push_back({m.rows[i], i, closeness, plus, minus});
  }
  std::ranges::sort(result.ranking, [](const TopsisEntry& a, const TopsisEntry& b) {
    if (a.closeness != b.closeness) return a.closeness > b.closeness;
    if (a.ref != b.ref) return a.ref < b.ref;
    return a.row < b.row;
  });
  return result;
}

}  // namespace joinrank
