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

#include <filesystem>

#include "fixtures.hpp"
#include "joinrank/error.hpp"
#include "joinrank/indexes.hpp"
#include "lake_builders.hpp"
#include "oracles.hpp"

namespace joinrank {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

TEST(InvertedIndex, OverlapMatchesBruteForce) {
  const auto catalog = testing::random_lake(17, 10, 3, 300, 150);
  const auto index = build_inverted_index(catalog);
  const auto sets = testing::distinct_sets(catalog);
  for (const auto& [ref, values] : sets) {
    const std::vector<std::string> q(values.begin(), values.end());
    const auto got = query_overlap_topk(index, q, 1000, &ref);
    const auto want = testing::brute_force_overlap_ranking(sets, values, ref);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].ref, want[i].first);
      EXPECT_EQ(got[i].overlap, want[i].second);
    }
  }
}

TEST(InvertedIndex, LookupIsSortedAndTopkTruncates) {
  const auto catalog = testing::random_lake(5, 6, 2, 50, 60);
  const auto index = build_inverted_index(catalog);
  for (const auto& [value, ids] : index.postings()) {
    const auto refs = index.lookup(value);
    EXPECT_TRUE(std::is_sorted(refs.begin(), refs.end()));
    EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
  }
  EXPECT_TRUE(index.lookup("no such value").empty());
  const std::vector<std::string> q = {"w1", "w2", "w3", "w10", "w20"};
  EXPECT_LE(query_overlap_topk(index, q, 2).size(), 2u);
}

TEST(InvertedIndex, RowCapLimitsContributedValues) {
  DataLakeCatalog catalog;
  testing::add_to_catalog(catalog, "big", {{"k", testing::token_range("k", 0, 1000)}});
  const auto index = build_inverted_index(catalog, 100, 42);
  EXPECT_EQ(index.postings().size(), 100u);
  EXPECT_EQ(index.indexed_row_cap(), 100u);
  EXPECT_EQ(build_inverted_index(catalog, 100, 42), index);
}

TEST(EmbeddingIndex, KnnMatchesBruteForceScanAndExcludesQuery) {
  const auto catalog = testing::random_lake(8, 8, 3, 100, 40);
  std::vector<std::pair<ColumnRef, std::string>> texts;
  for (const auto& [ref, p] : catalog.columns) texts.emplace_back(ref, build_value_sentence(p));
  BuiltinEmbedder e;
  const auto index = build_embedding_index(EmbeddingKind::ValueSentence, texts, e);
  EXPECT_TRUE(std::is_sorted(index.entries.begin(), index.entries.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; }));
  for (const auto& [qref, qvec] : index.entries) {
    const auto got = knn_query(index, qvec, 5, &qref);
    std::vector<std::pair<double, ColumnRef>> all;
    for (const auto& [ref, vec] : index.entries)
      if (ref != qref) all.emplace_back(testing::brute_force_cosine(qvec.values, vec.values), ref);
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    ASSERT_EQ(got.size(), 5u);
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].ref, all[i].second);
      EXPECT_NEAR(got[i].similarity, all[i].first, 1e-12);
    }
  }
}

TEST(EmbeddingIndex, DimensionMismatchThrows) {
  EmbeddingIndex index;
  index.dim = 4;
  index.entries.push_back({ColumnRef{"t", "c"}, EmbeddingVector{{1, 0, 0, 0}}});
  EXPECT_THROW(knn_query(index, EmbeddingVector{{1, 0}}, 1), ValidationError);
}

TEST(MinHashIndex, NearestOrdersByHammingThenRef) {
  const auto catalog = testing::random_lake(21, 6, 2, 80, 50);
  const auto index = build_minhash_index(catalog);
  const ColumnRef q{"t0", "c0"};
  const auto got = index.nearest(*index.find(q), 100, &q);
  EXPECT_EQ(got.size(), catalog.columns.size() - 1);
  for (std::size_t i = 1; i < got.size(); ++i) {
    EXPECT_TRUE(got[i - 1].distance < got[i].distance ||
                (got[i - 1].distance == got[i].distance && got[i - 1].ref < got[i].ref));
  }
}

class BundlePersistence : public ::testing::TestWithParam<SearchMode> {};

TEST_P(BundlePersistence, LoadOfPersistIsIdentical) {
  TempDir dir;
  const auto bundle = testing::make_bundle(testing::random_lake(3, 5, 3, 200, 80), GetParam());
  persist_bundle(bundle, dir.path());
  const auto loaded = load_bundle(dir.path());
  EXPECT_EQ(loaded, bundle);
  EXPECT_EQ(fs::exists(dir / "inverted.bin"), GetParam() == SearchMode::Exact);
  for (const char* f : {"catalog.json", "config.json", "minhash.bin", "meta_embeddings.bin",
                        "value_embeddings.bin"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
}

INSTANTIATE_TEST_SUITE_P(Modes, BundlePersistence,
                         ::testing::Values(SearchMode::Exact, SearchMode::Minhash),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Bundle, MinhashModeDropsInvertedIndexAndSummarizes) {
  const auto bundle = testing::make_bundle(testing::random_lake(3, 3, 2, 400, 300), SearchMode::Minhash);
  EXPECT_FALSE(bundle.inverted.has_value());
  EXPECT_FALSE(bundle.supports(SearchMode::Exact));
  EXPECT_TRUE(bundle.supports(SearchMode::Minhash));
  for (const auto& [ref, p] : bundle.catalog.columns) {
    EXPECT_EQ(p.summarized, p.distinct_count > bundle.config.summary_values);
    EXPECT_LE(p.frequent_values.size(), bundle.config.summary_values);
  }
}

TEST(Bundle, VersionMismatchIsAFormatError) {
  TempDir dir;
  persist_bundle(testing::make_bundle(testing::random_lake(1, 2, 2, 20, 10)), dir.path());
  auto config = testing::read_file(dir / "config.json");
  const std::string key = "\"format_version\": 1";
  const auto pos = config.find(key);
  ASSERT_NE(pos, std::string::npos) << config;
  config.replace(pos, key.size(), "\"format_version\": 7");
  testing::write_file(dir / "config.json", config);
  EXPECT_THROW(load_bundle(dir.path()), FormatError);
}

TEST(Bundle, CorruptBinaryNamesTheFile) {
  for (const char* file : {"minhash.bin", "inverted.bin", "value_embeddings.bin"}) {
    TempDir dir;
    persist_bundle(testing::make_bundle(testing::random_lake(1, 2, 2, 20, 10)), dir.path());
    const auto bytes = testing::read_file(dir / file);
    testing::write_file(dir / file, bytes.substr(0, bytes.size() / 2));
    try {
      load_bundle(dir.path());
      ADD_FAILURE() << "truncated " << file << " loaded";
    } catch (const FormatError& e) {
      EXPECT_NE(std::string(e.what()).find(file), std::string::npos) << e.what();
    }
    testing::write_file(dir / file, "XXXX" + bytes.substr(4));
    EXPECT_THROW(load_bundle(dir.path()), FormatError) << file;
  }
}

TEST(Bundle, MissingDirectoryIsADataError) {
  EXPECT_THROW(load_bundle("/nonexistent/bundle"), DataError);
}

}  // namespace
}  // namespace joinrank
