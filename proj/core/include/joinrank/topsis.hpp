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

#include <vector>

#include "joinrank/column_ref.hpp"
#include "joinrank/criterion.hpp"

namespace joinrank {

// Candidates x criteria score matrix. Weights must sum to 1.
struct DecisionMatrix {
  std::vector<ColumnRef> rows;
  std::vector<std::vector<double>> scores;  // scores[row][criterion]
  std::vector<CriterionSpec> criteria;

  std::size_t row_count() const { return rows.size(); }
  std::size_t criterion_count() const { return criteria.size(); }
};

struct TopsisEntry {
  ColumnRef ref;
  std::size_t row = 0;  // row index in the input matrix
  double closeness = 0.0;
  double distance_to_ideal = 0.0;
  double distance_to_anti_ideal = 0.0;
};

struct TopsisResult {
  std::vector<TopsisEntry> ranking;  // closeness descending, ties by ref
  std::vector<double> ideal;         // weighted, normalized space
  std::vector<double> anti_ideal;
};

// Throws ValidationError naming the offending row or criterion when the
// matrix is empty, ragged, holds a non-finite score, or has negative
// weights or weights not summing to 1 (+-1e-9).
void validate(const DecisionMatrix& matrix);

// Vector-normalizes each criterion column (a zero-norm column maps to 0),
// applies weights, takes the ideal/anti-ideal per direction, and ranks by
// closeness d- / (d+ + d-), which is 0.5 when both distances are 0.
TopsisResult topsis_rank(const DecisionMatrix& matrix);

// Divides each weight by the sum. Throws ValidationError when the sum is
// not positive.
void renormalize_weights(std::vector<CriterionSpec>& criteria);

}  // namespace joinrank
