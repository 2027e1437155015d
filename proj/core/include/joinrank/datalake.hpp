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
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "joinrank/column_ref.hpp"
#include "joinrank/csv.hpp"

namespace joinrank {

inline constexpr std::uint64_t kDefaultSampleCap = 1'000'000;
inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::size_t kDefaultValueSentenceMax = 512;

enum class ColumnType { String, Numeric, Date };

std::string_view to_string(ColumnType type);
ColumnType column_type_from_string(std::string_view name);

struct TableMeta {
  std::string table_id;
  std::string name;
  std::optional<std::string> description;
  std::vector<std::string> tags;
  std::optional<std::string> source;
  std::uint64_t row_count = 0;
  // Header order, used for the "columns:" segment of metadata sentences.
  std::vector<std::string> column_names;

  friend bool operator==(const TableMeta&, const TableMeta&) = default;
};

struct ValueCount {
  std::string value;
  std::uint64_t count = 0;

  friend bool operator==(const ValueCount&, const ValueCount&) = default;
};

// Statistics of one column.
//
// The sampled multiset is stored as its frequency table `frequent_values`,
// sorted by count descending and value ascending. When the column has at
// most `sample_cap` non-null values the table covers the whole column and
// `distinct_count` is exact; otherwise both describe a uniform sample.
//
// Bundles built in Minhash mode keep only the head of the frequency table
// (`summarized` is then true); counts are unaffected.
struct ColumnProfile {
  ColumnRef ref;
  ColumnType inferred_type = ColumnType::String;
  bool type_warning = false;
  std::uint64_t total_rows = 0;
  std::uint64_t non_null_count = 0;
  std::uint64_t distinct_count = 0;
  std::uint64_t sample_size = 0;
  std::vector<ValueCount> frequent_values;
  bool summarized = false;

  std::vector<std::string> distinct_values() const;

  friend bool operator==(const ColumnProfile&, const ColumnProfile&) = default;
};

struct DataLakeCatalog {
  std::map<std::string, TableMeta> tables;
  std::map<ColumnRef, ColumnProfile> columns;

  const TableMeta& table(std::string_view table_id) const;
  const ColumnProfile& profile(const ColumnRef& ref) const;
  bool contains(const ColumnRef& ref) const { return columns.contains(ref); }

  friend bool operator==(const DataLakeCatalog&, const DataLakeCatalog&) = default;
};

struct TypeInference {
  ColumnType type = ColumnType::String;
  bool warning = false;  // set for empty input
};

// Numeric when >= 80% of values parse as numbers, Date when >= 80% parse as
// dates, otherwise String.
TypeInference infer_column_type(std::span<const std::string> values);

// Profiles one column of a parsed table. Throws DataError naming the table
// and column when the column is missing.
ColumnProfile profile_column(const CsvTable& table, std::string_view table_id,
                             std::string_view column_name,
                             std::uint64_t sample_cap = kDefaultSampleCap,
                             std::uint64_t seed = kDefaultSeed);

// Keeps the `keep` most frequent values and marks the profile summarized.
ColumnProfile summarize_profile(const ColumnProfile& profile, std::size_t keep);

// "table: <name>. description: <desc>. tags: <t1, t2>. source: <src>.
//  column: <col>. columns: <c1, c2>." lowercased; absent segments skipped.
std::string build_metadata_sentence(const DataLakeCatalog& catalog,
                                    const ColumnRef& ref);
std::string build_metadata_sentence(const TableMeta& table,
                                    std::string_view column_name);

// Up to `max_values` distinct values in frequency order joined by ", ".
std::string build_value_sentence(const ColumnProfile& profile,
                                 std::size_t max_values = kDefaultValueSentenceMax);
std::string build_value_sentence(std::span<const std::string> values);

struct IngestOptions {
  std::uint64_t sample_cap = kDefaultSampleCap;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct IngestIssue {
  std::filesystem::path file;
  std::string message;
};

struct IngestResult {
  DataLakeCatalog catalog;
  std::vector<IngestIssue> issues;
};

// Table metadata from a parsed CSV plus an optional `<table>.meta.json`
// sidecar ({name, description, tags, source}).
TableMeta read_table_meta(const CsvTable& table, std::string_view table_id,
                          const std::filesystem::path& sidecar);

// Ingests every `*.csv` in `dir` (non-recursive). Unreadable files are
// reported in `issues` and skipped.
IngestResult ingest_datalake(const std::filesystem::path& dir,
                             const IngestOptions& options = {});

// Profiles all columns of one parsed table into `catalog`.
void add_table(DataLakeCatalog& catalog, const CsvTable& table, TableMeta meta,
               const IngestOptions& options = {});

// Catalog persistence (JSON, versioned with "format_version").
inline constexpr int kCatalogFormatVersion = 1;
std::string catalog_to_json(const DataLakeCatalog& catalog, int indent = -1);
DataLakeCatalog catalog_from_json(std::string_view json,
                                  std::string_view source = "catalog.json");
void save_catalog(const DataLakeCatalog& catalog, const std::filesystem::path& path);
DataLakeCatalog load_catalog(const std::filesystem::path& path);

}  // namespace joinrank
