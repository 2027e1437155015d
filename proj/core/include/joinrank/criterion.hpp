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
#include <cstddef>
#include <string_view>

namespace joinrank {

enum class CriterionId : std::size_t {
  UniqueValues = 0,
  IntersectionSize,
  JoinSize,
  ReverseJoinSize,
  ValueSemantics,
  DisjointValueSemantics,
  MetadataSemantics,
};

inline constexpr std::size_t kCriterionCount = 7;

inline constexpr std::array<CriterionId, kCriterionCount> kAllCriteria{
    CriterionId::UniqueValues,          CriterionId::IntersectionSize,
    CriterionId::JoinSize,              CriterionId::ReverseJoinSize,
    CriterionId::ValueSemantics,        CriterionId::DisjointValueSemantics,
    CriterionId::MetadataSemantics};

enum class Direction { Benefit, Cost };

struct CriterionSpec {
  CriterionId id = CriterionId::UniqueValues;
  Direction direction = Direction::Benefit;
  double weight = 0.0;
};

constexpr std::size_t index_of(CriterionId id) { return static_cast<std::size_t>(id); }

// snake_case names used in JSON output and --weights overrides.
std::string_view to_string(CriterionId id);
CriterionId criterion_from_string(std::string_view name);

constexpr Direction default_direction(CriterionId id) {
  return id == CriterionId::JoinSize || id == CriterionId::ReverseJoinSize
             ? Direction::Cost
             : Direction::Benefit;
}

// Criteria that only apply between two String columns.
constexpr bool string_only(CriterionId id) {
  return id == CriterionId::ValueSemantics || id == CriterionId::DisjointValueSemantics;
}

// Raw (unnormalized) weights indexed by CriterionId.
struct CriterionWeights {
  std::array<double, kCriterionCount> raw{0.2, 0.5, 0.2, 0.2, 0.2, 0.2, 0.2};

  double& operator[](CriterionId id) { return raw[index_of(id)]; }
  double operator[](CriterionId id) const { return raw[index_of(id)]; }
};

}  // namespace joinrank
