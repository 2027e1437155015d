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

#include "joinrank/minhash.hpp"

#include <algorithm>

#include "joinrank/error.hpp"
#include "joinrank/hash.hpp"

namespace joinrank {

bool MinHashSignature::is_empty_set() const {
  return std::ranges::all_of(sig, [](std::uint64_t s) { return s == kEmptySlot; });
}

MinHashSignature minhash_signature(std::span<const std::string> values,
                                   std::size_t num_perm, std::uint64_t seed) {
  if (num_perm == 0) throw ValidationError("num_perm must be positive");
  std::vector<std::uint64_t> a(num_perm), b(num_perm);
  for (std::size_t i = 0; i < num_perm; ++i) {
    a[i] = hash_combine(seed, 2 * i) | 1ULL;
    b[i] = hash_combine(seed, 2 * i + 1);
  }

  MinHashSignature out;
  out.sig.assign(num_perm, kEmptySlot);
  for (const auto& v : values) {
    const std::uint64_t base = mix64(fnv1a64(v));
    for (std::size_t i = 0; i < num_perm; ++i) {
      out.sig[i] = std::min(out.sig[i], mix64(a[i] * base + b[i]));
    }
  }
  return out;
}

std::size_t hamming_distance(const MinHashSignature& a, const MinHashSignature& b) {
  if (a.num_perm() != b.num_perm()) {
    throw ValidationError("hamming_distance: signature lengths differ (" +
                          std::to_string(a.num_perm()) + " vs " +
                          std::to_string(b.num_perm()) + ")");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.num_perm(); ++i) d += a.sig[i] != b.sig[i];
  return d;
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
  return 1.0 - static_cast<double>(hamming_distance(a, b)) /
                   static_cast<double>(a.num_perm());
}

}  // namespace joinrank
