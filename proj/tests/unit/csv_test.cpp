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

#include "fixtures.hpp"
#include "joinrank/csv.hpp"
#include "joinrank/error.hpp"

namespace joinrank {
namespace {

TEST(Csv, ParsesQuotedFieldsAndEmbeddedNewlines) {
  const auto t = parse_csv("a,b\n\"x, y\",\"he said \"\"hi\"\"\"\n\"multi\nline\",2\n");
  ASSERT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(t.row_count, 2u);
  EXPECT_EQ(t.columns[0][0], "x, y");
  EXPECT_EQ(t.columns[1][0], "he said \"hi\"");
  EXPECT_EQ(t.columns[0][1], "multi\nline");
}

TEST(Csv, HandlesBomCrlfAndShortRows) {
  const auto t = parse_csv("\xEF\xBB\xBFid,name\r\n1,ann\r\n2\r\n");
  EXPECT_EQ(t.header[0], "id");
  ASSERT_EQ(t.row_count, 2u);
  EXPECT_EQ(t.columns[1][1], "");
  EXPECT_EQ(t.find_column("name"), 1);
  EXPECT_EQ(t.find_column("missing"), -1);
}

TEST(Csv, LongRowIsADataError) {
  EXPECT_THROW(parse_csv("a,b\n1,2,3\n"), DataError);
}

TEST(Csv, BlankAndDuplicateHeadersAreRenamed) {
  const auto t = parse_csv("x,,x\n1,2,3\n");
  ASSERT_EQ(t.header.size(), 3u);
  EXPECT_NE(t.header[1], "");
  EXPECT_NE(t.header[0], t.header[2]);
}

TEST(Csv, MissingFileIsADataError) {
  EXPECT_THROW(read_csv("/nonexistent/nowhere.csv"), DataError);
}

TEST(Csv, ReadsFromDisk) {
  testing::TempDir dir;
  testing::write_file(dir / "t.csv", "k\nv1\nv2\n");
  const auto t = read_csv(dir / "t.csv");
  EXPECT_EQ(t.row_count, 2u);
}

}  // namespace
}  // namespace joinrank
