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

// Reference implementations used as test oracles. Each one is written
// independently of the library, favouring the most literal formulation over
// speed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace joinrank::testing {

struct OracleTopsisOutput {
  std::vector<double> closeness;  // per input row
  std::vector<std::size_t> order; // row indices, best first
};

// Textbook TOPSIS, one step per loop. `labels` break closeness ties.
inline OracleTopsisOutput oracle_topsis(const std::vector<std::vector<double>>& x,
                                        const std::vector<double>& w,
                                        const std::vector<bool>& benefit,
                                        const std::vector<std::string>& labels) {
  const std::size_t m = x.size();
  const std::size_t n = w.size();

  // Step 1: r_ij = x_ij / sqrt(sum_k x_kj^2).
  std::vector<std::vector<double>> r(m, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum_sq += x[i][j] * x[i][j];
    const double denom = std::sqrt(sum_sq);
    for (std::size_t i = 0; i < m; ++i) r[i][j] = denom == 0.0 ? 0.0 : x[i][j] / denom;
  }

  // Step 2: v_ij = w_j * r_ij.
  std::vector<std::vector<double>> v = r;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) v[i][j] = w[j] * r[i][j];

  // Step 3: ideal and anti-ideal points.
  std::vector<double> best(n), worst(n);
  for (std::size_t j = 0; j < n; ++j) {
    double hi = v[0][j], lo = v[0][j];
    for (std::size_t i = 1; i < m; ++i) {
      hi = std::max(hi, v[i][j]);
      lo = std::min(lo, v[i][j]);
    }
    best[j] = benefit[j] ? hi : lo;
    worst[j] = benefit[j] ? lo : hi;
  }

  // Step 4: separations and relative closeness.
  OracleTopsisOutput out;
  out.closeness.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double dp = 0.0, dm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      dp += (v[i][j] - best[j]) * (v[i][j] - best[j]);
      dm += (v[i][j] - worst[j]) * (v[i][j] - worst[j]);
    }
    dp = std::sqrt(dp);
    dm = std::sqrt(dm);
    out.closeness[i] = (dp + dm == 0.0) ? 0.5 : dm / (dp + dm);
  }

  // Step 5: order.
  out.order.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.order[i] = i;
  std::sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
    if (out.closeness[a] != out.closeness[b]) return out.closeness[a] > out.closeness[b];
    if (labels[a] != labels[b]) return labels[a] < labels[b];
    return a < b;
  });
  return out;
}

// Left-join cardinality by nested loops: every query row contributes the
// number of matching target rows, or 1 when nothing matches.
inline std::size_t brute_force_left_join(const std::vector<std::string>& q,
                                         const std::vector<std::string>& t) {
  std::size_t rows = 0;
  for (const auto& a : q) {
    std::size_t matches = 0;
    for (const auto& b : t)
      if (a == b) ++matches;
    rows += matches == 0 ? 1 : matches;
  }
  return rows;
}

template <typename T>
double exact_jaccard(const std::set<T>& a, const std::set<T>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

// Exhaustive overlap ranking: for every column, |query ∩ column| over
// distinct values; zero overlaps dropped; overlap desc then key asc.
template <typename Key>
std::vector<std::pair<Key, std::size_t>> brute_force_overlap_ranking(
    const std::map<Key, std::set<std::string>>& columns, const std::set<std::string>& query,
    const Key& exclude) {
  std::vector<std::pair<Key, std::size_t>> out;
  for (const auto& [key, values] : columns) {
    if (key == exclude) continue;
    std::vector<std::string> inter;
    std::set_intersection(values.begin(), values.end(), query.begin(), query.end(),
                          std::back_inserter(inter));
    if (!inter.empty()) out.emplace_back(key, inter.size());
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

inline double brute_force_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

}  // namespace joinrank::testing
