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


#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "joinrank/minhash.hpp"
#include "oracles.hpp"

namespace joinrank {
namespace {

std::vector<std::string> ints(int from, int to) {
  std::vector<std::string> v;
  for (int i = from; i <= to; ++i) v.push_back(std::to_string(i));
  return v;
}

TEST(MinHash, HalfOverlapEstimate) {
  const auto a = minhash_signature(ints(1, 100));
  const auto b = minhash_signature(ints(51, 150));
  EXPECT_EQ(a.num_perm(), 100u);
  EXPECT_NEAR(estimate_jaccard(a, b), 1.0 / 3.0, 0.15);
  EXPECT_DOUBLE_EQ(estimate_jaccard(a, b), 1.0 - hamming_distance(a, b) / 100.0);
}

TEST(MinHash, IdenticalSetsAndDuplicates) {
  auto v = ints(1, 50);
  const auto a = minhash_signature(v);
  v.insert(v.end(), v.begin(), v.begin() + 10);
  EXPECT_EQ(minhash_signature(v).sig, a.sig);
  EXPECT_EQ(estimate_jaccard(a, a), 1.0);
}

TEST(MinHash, EmptySetSentinel) {
  const auto e = minhash_signature({});
  EXPECT_TRUE(e.is_empty_set());
  EXPECT_FALSE(minhash_signature(ints(1, 1)).is_empty_set());
}

TEST(MinHash, SeedChangesSignature) {
  EXPECT_NE(minhash_signature(ints(1, 20), 100, 1).sig, minhash_signature(ints(1, 20), 100, 2).sig);
}

TEST(MinHash, HammingRequiresEqualLength) {
  EXPECT_ANY_THROW(hamming_distance(minhash_signature(ints(1, 5), 10), minhash_signature(ints(1, 5), 20)));
}

TEST(MinHash, EstimateWithinThreeSigmaOnRandomPairs) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(20, 400);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  int within = 0;
  const int pairs = 200;
  for (int p = 0; p < pairs; ++p) {
    const int na = size(rng), nb = size(rng);
    const int shared = static_cast<int>(frac(rng) * std::min(na, nb));
    std::set<std::string> a, b;
    for (int i = 0; i < shared; ++i) {
      a.insert("s" + std::to_string(p) + "_" + std::to_string(i));
      b.insert("s" + std::to_string(p) + "_" + std::to_string(i));
    }
    for (int i = shared; i < na; ++i) a.insert("a" + std::to_string(p) + "_" + std::to_string(i));
    for (int i = shared; i < nb; ++i) b.insert("b" + std::to_string(p) + "_" + std::to_string(i));
    const double j = testing::exact_jaccard(a, b);
    const std::vector<std::string> va(a.begin(), a.end()), vb(b.begin(), b.end());
    const double est = estimate_jaccard(minhash_signature(va), minhash_signature(vb));
    if (std::abs(est - j) <= 3.0 * std::sqrt(j * (1 - j) / 100.0) + 0.02) ++within;
  }
  EXPECT_GE(within, 190);
}

}  // namespace
}  // namespace joinrank
