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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "joinrank/column_ref.hpp"

namespace joinrank {

inline constexpr std::size_t kDefaultNumPerm = 100;
inline constexpr std::uint64_t kEmptySlot = std::numeric_limits<std::uint64_t>::max();

struct MinHashSignature {
  ColumnRef ref;
  std::vector<std::uint64_t> sig;

  std::size_t num_perm() const { return sig.size(); }
  // Signature of the empty set: every slot holds kEmptySlot.
  bool is_empty_set() const;

  friend bool operator==(const MinHashSignature&, const MinHashSignature&) = default;
};

// One hash per permutation i: h_i(x) = mix64(a_i * base(x) + b_i) with odd
// a_i and b_i drawn from (seed, i); base(x) is a mixed FNV-1a of the value.
// Duplicate values do not change the result.
MinHashSignature minhash_signature(std::span<const std::string> values,
                                   std::size_t num_perm = kDefaultNumPerm,
                                   std::uint64_t seed = 42);

// Number of positions where the signatures differ. Throws ValidationError
// when lengths differ.
std::size_t hamming_distance(const MinHashSignature& a, const MinHashSignature& b);

// 1 - hamming / num_perm.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

}  // namespace joinrank
