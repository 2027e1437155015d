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

#include <algorithm>
#include <numeric>
#include <random>

#include "joinrank/error.hpp"
#include "joinrank/topsis.hpp"
#include "oracles.hpp"

namespace joinrank {
namespace {

ColumnRef row_ref(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "r%03zu", i);
  return {buf, "c"};
}

DecisionMatrix make_matrix(const std::vector<std::vector<double>>& x, const std::vector<double>& w,
                           const std::vector<Direction>& dir) {
  DecisionMatrix m;
  for (std::size_t j = 0; j < w.size(); ++j)
    m.criteria.push_back({kAllCriteria[j], dir[j], w[j]});
  for (std::size_t i = 0; i < x.size(); ++i) {
    m.rows.push_back(row_ref(i));
    m.scores.push_back(x[i]);
  }
  return m;
}

std::vector<std::size_t> order_of(const TopsisResult& r) {
  std::vector<std::size_t> out;
  for (const auto& e : r.ranking) out.push_back(e.row);
  return out;
}

DecisionMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> val(-1.0, 10.0), wt(0.05, 1.0);
  std::bernoulli_distribution cost(0.3);
  std::vector<std::vector<double>> x(rows, std::vector<double>(cols));
  for (auto& r : x)
    for (auto& v : r) v = val(rng);
  std::vector<double> w(cols);
  double sum = 0.0;
  for (auto& v : w) sum += v = wt(rng);
  for (auto& v : w) v /= sum;
  std::vector<Direction> d(cols);
  for (auto& v : d) v = cost(rng) ? Direction::Cost : Direction::Benefit;
  return make_matrix(x, w, d);
}

TEST(Topsis, TwoByTwoHandExample) {
  const auto m = make_matrix({{3, 4}, {4, 3}}, {0.7, 0.3}, {Direction::Benefit, Direction::Benefit});
  const auto r = topsis_rank(m);
  const auto o = testing::oracle_topsis(m.scores, {0.7, 0.3}, {true, true}, {"r000", "r001"});
  ASSERT_EQ(r.ranking.size(), 2u);
  EXPECT_EQ(r.ranking[0].row, 1u);
  EXPECT_NEAR(r.ranking[0].closeness, o.closeness[1], 1e-9);
  EXPECT_NEAR(r.ranking[1].closeness, o.closeness[0], 1e-9);
  // Worked by hand: r = [[.6,.8],[.8,.6]], v = [[.42,.24],[.56,.18]].
  EXPECT_NEAR(r.ranking[0].closeness, 0.7, 1e-12);
  EXPECT_NEAR(r.ranking[1].closeness, 0.3, 1e-12);
  EXPECT_NEAR(r.ranking[0].distance_to_ideal, 0.06, 1e-12);
  EXPECT_NEAR(r.ranking[0].distance_to_anti_ideal, 0.14, 1e-12);
  EXPECT_NEAR(r.ideal[0], 0.56, 1e-12);
  EXPECT_NEAR(r.anti_ideal[1], 0.18, 1e-12);
}

TEST(Topsis, SingleCandidateIsOneHalf) {
  const auto r = topsis_rank(make_matrix({{1, 2, 3}}, {0.2, 0.3, 0.5},
                                         {Direction::Benefit, Direction::Cost, Direction::Benefit}));
  ASSERT_EQ(r.ranking.size(), 1u);
  EXPECT_EQ(r.ranking[0].closeness, 0.5);
}

TEST(Topsis, ZeroColumnContributesNothing) {
  const auto with_zero = topsis_rank(make_matrix({{0, 1}, {0, 2}, {0, 3}}, {0.5, 0.5},
                                                 {Direction::Benefit, Direction::Benefit}));
  for (const auto& e : with_zero.ranking) EXPECT_TRUE(std::isfinite(e.closeness));
  EXPECT_EQ(order_of(with_zero), (std::vector<std::size_t>{2, 1, 0}));
}

TEST(Topsis, MatchesOracleOnRandomMatrices) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> rows(1, 20), cols(1, 7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = random_matrix(rng, rows(rng), cols(rng));
    std::vector<double> w;
    std::vector<bool> benefit;
    for (const auto& c : m.criteria) {
      w.push_back(c.weight);
      benefit.push_back(c.direction == Direction::Benefit);
    }
    std::vector<std::string> labels;
    for (const auto& r : m.rows) labels.push_back(to_string(r));
    const auto o = testing::oracle_topsis(m.scores, w, benefit, labels);
    const auto r = topsis_rank(m);
    ASSERT_EQ(order_of(r), o.order);
    for (const auto& e : r.ranking) EXPECT_NEAR(e.closeness, o.closeness[e.row], 1e-9);
  }
}

TEST(Topsis, WeakDominanceRanksAbove) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_matrix(rng, 5, 4);
    // Row 0 := row 1 improved on one criterion, equal elsewhere.
    m.scores[0] = m.scores[1];
    const auto j = pick(rng);
    m.scores[0][j] += m.criteria[j].direction == Direction::Benefit ? 1.0 : -1.0;
    const auto r = topsis_rank(m);
    const auto order = order_of(r);
    EXPECT_LT(std::find(order.begin(), order.end(), 0u), std::find(order.begin(), order.end(), 1u));
  }
}

TEST(Topsis, OrderIsScaleInvariantPerColumn) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> factor(0.01, 100.0);
  std::uniform_int_distribution<std::size_t> pick(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_matrix(rng, 12, 5);
    const auto before = order_of(topsis_rank(m));
    const auto j = pick(rng);
    const double f = factor(rng);
    for (auto& row : m.scores) row[j] *= f;
    EXPECT_EQ(order_of(topsis_rank(m)), before);
  }
}

TEST(Topsis, RowPermutationPermutesRanking) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_matrix(rng, 10, 4);
    const auto base = topsis_rank(m);
    std::vector<std::size_t> perm(m.row_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    DecisionMatrix p = m;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      p.rows[i] = m.rows[perm[i]];
      p.scores[i] = m.scores[perm[i]];
    }
    const auto shuffled = topsis_rank(p);
    for (std::size_t i = 0; i < base.ranking.size(); ++i) {
      EXPECT_EQ(shuffled.ranking[i].ref, base.ranking[i].ref);
      EXPECT_EQ(perm[shuffled.ranking[i].row], base.ranking[i].row);
      EXPECT_NEAR(shuffled.ranking[i].closeness, base.ranking[i].closeness, 1e-12);
    }
  }
}

TEST(Topsis, ClosenessBoundsAndIdealCandidate) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = random_matrix(rng, 8, 3);
    // Row 0 becomes best on every criterion.
    for (std::size_t j = 0; j < 3; ++j) {
      double best = m.scores[1][j];
      for (std::size_t i = 1; i < 8; ++i) {
        best = m.criteria[j].direction == Direction::Benefit ? std::max(best, m.scores[i][j])
                                                             : std::min(best, m.scores[i][j]);
      }
      m.scores[0][j] = best + (m.criteria[j].direction == Direction::Benefit ? 0.5 : -0.5);
    }
    const auto r = topsis_rank(m);
    for (const auto& e : r.ranking) {
      EXPECT_GE(e.closeness, 0.0);
      EXPECT_LE(e.closeness, 1.0);
    }
    EXPECT_EQ(r.ranking[0].row, 0u);
    EXPECT_NEAR(r.ranking[0].closeness, 1.0, 1e-12);
  }
}

TEST(Topsis, FlippingTheOnlyCriterionReversesOrder) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = random_matrix(rng, 9, 1);
    m.criteria[0].direction = Direction::Benefit;
    auto order = order_of(topsis_rank(m));
    m.criteria[0].direction = Direction::Cost;
    auto flipped = order_of(topsis_rank(m));
    std::reverse(flipped.begin(), flipped.end());
    EXPECT_EQ(flipped, order);
  }
}

TEST(Topsis, DuplicateCandidateSharesCloseness) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = random_matrix(rng, 6, 4);
    m.rows.push_back(row_ref(99));
    m.scores.push_back(m.scores[2]);
    const auto r = topsis_rank(m);
    double c2 = -1, c99 = -2;
    for (const auto& e : r.ranking) {
      if (e.row == 2) c2 = e.closeness;
      if (e.row == 6) c99 = e.closeness;
    }
    EXPECT_EQ(c2, c99);
  }
}

// Criteria are only ever dropped query-wide, i.e. when every candidate
// scores the same on them. Such a column must not affect the ranking.
TEST(Topsis, DroppingAConstantCriterionChangesNothing) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> constant(-1.0, 3.0), extra_w(0.05, 0.5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto base = random_matrix(rng, 10, 4);
    DecisionMatrix wider = base;
    const double c = trial % 3 == 0 ? 0.0 : constant(rng);
    const double w = extra_w(rng);
    for (auto& spec : wider.criteria) spec.weight *= (1.0 - w);
    wider.criteria.push_back({CriterionId::MetadataSemantics, Direction::Benefit, w});
    for (auto& row : wider.scores) row.push_back(c);
    const auto a = topsis_rank(base), b = topsis_rank(wider);
    ASSERT_EQ(order_of(a), order_of(b));
    for (std::size_t i = 0; i < a.ranking.size(); ++i)
      EXPECT_NEAR(a.ranking[i].closeness, b.ranking[i].closeness, 1e-9);
  }
}

TEST(Topsis, TiesBreakByRef) {
  DecisionMatrix m = make_matrix({{1, 1}, {1, 1}, {1, 1}}, {0.5, 0.5},
                                 {Direction::Benefit, Direction::Cost});
  m.rows = {{"z", "c"}, {"a", "c"}, {"m", "c"}};
  const auto r = topsis_rank(m);
  EXPECT_EQ(r.ranking[0].ref.table_id, "a");
  EXPECT_EQ(r.ranking[1].ref.table_id, "m");
  EXPECT_EQ(r.ranking[2].ref.table_id, "z");
  for (const auto& e : r.ranking) EXPECT_EQ(e.closeness, 0.5);
}

TEST(TopsisValidation, RejectsBadMatrices) {
  const std::vector<Direction> bb{Direction::Benefit, Direction::Benefit};
  EXPECT_THROW(topsis_rank(make_matrix({}, {0.5, 0.5}, bb)), ValidationError);
  EXPECT_THROW(topsis_rank(make_matrix({{1, 2}, {1}}, {0.5, 0.5}, bb)), ValidationError);
  EXPECT_THROW(topsis_rank(make_matrix({{1, NAN}}, {0.5, 0.5}, bb)), ValidationError);
  EXPECT_THROW(topsis_rank(make_matrix({{1, 2}}, {0.5, 0.6}, bb)), ValidationError);
  EXPECT_THROW(topsis_rank(make_matrix({{1, 2}}, {1.5, -0.5}, bb)), ValidationError);
  EXPECT_NO_THROW(topsis_rank(make_matrix({{1, 2}}, {0.5, 0.5 + 1e-10}, bb)));
  try {
    topsis_rank(make_matrix({{1, 2}, {3, 4}, {5}}, {0.5, 0.5}, bb));
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("r002"), std::string::npos) << e.what();
  }
}

TEST(RenormalizeWeights, DividesBySum) {
  std::vector<CriterionSpec> c = {{CriterionId::UniqueValues, Direction::Benefit, 0.2},
                                  {CriterionId::IntersectionSize, Direction::Benefit, 0.5},
                                  {CriterionId::JoinSize, Direction::Cost, 0.2},
                                  {CriterionId::ReverseJoinSize, Direction::Cost, 0.2},
                                  {CriterionId::MetadataSemantics, Direction::Benefit, 0.2}};
  renormalize_weights(c);
  EXPECT_NEAR(c[1].weight, 0.5 / 1.3, 1e-15);
  EXPECT_NEAR(c[0].weight, 0.2 / 1.3, 1e-15);
  std::vector<CriterionSpec> zero = {{CriterionId::UniqueValues, Direction::Benefit, 0.0}};
  EXPECT_THROW(renormalize_weights(zero), ValidationError);
}

}  // namespace
}  // namespace joinrank
