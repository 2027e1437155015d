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

#include "joinrank/datalake.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <random>
#include <ranges>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "joinrank/error.hpp"
#include "joinrank/hash.hpp"
#include "joinrank/text.hpp"

namespace joinrank {

using json = nlohmann::json;

namespace {

constexpr double kTypeThreshold = 0.8;

std::vector<ValueCount> frequency_table(std::span<const std::string> values) {
  std::unordered_map<std::string_view, std::uint64_t> counts;
  counts.reserve(values.size());
  for (const auto& v : values) ++counts[v];
  std::vector<ValueCount> table;
  table.reserve(counts.size());
  for (const auto& [value, count] : counts) {
    table.push_back({std::string(value), count});
  }
  std::ranges::sort(table, [](const ValueCount& a, const ValueCount& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.value < b.value;
  });
  return table;
}

std::uint64_t column_stream_seed(std::uint64_t seed, std::string_view table_id,
                                 std::string_view column) {
  std::uint64_t h = fnv1a64(table_id);
  h = fnv1a64(std::string_view("\0", 1), h);
  h = fnv1a64(column, h);
  return hash_combine(seed, h);
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string_view to_string(ColumnType type) {
  switch (type) {
    case ColumnType::String: return "string";
    case ColumnType::Numeric: return "numeric";
    case ColumnType::Date: return "date";
  }
  return "string";
}

ColumnType column_type_from_string(std::string_view name) {
  if (name == "string") return ColumnType::String;
  if (name == "numeric") return ColumnType::Numeric;
  if (name == "date") return ColumnType::Date;
  throw DataError("unknown column type '" + std::string(name) + "'");
}

std::vector<std::string> ColumnProfile::distinct_values() const {
  std::vector<std::string> out;
  out.reserve(frequent_values.size());
  for (const auto& vc : frequent_values) out.push_back(vc.value);
  return out;
}

const TableMeta& DataLakeCatalog::table(std::string_view table_id) const {
  auto it = tables.find(std::string(table_id));
  if (it == tables.end()) {
    throw DataError("unknown table '" + std::string(table_id) + "'");
  }
  return it->second;
}

const ColumnProfile& DataLakeCatalog::profile(const ColumnRef& ref) const {
  auto it = columns.find(ref);
  if (it == columns.end()) {
    throw DataError("unknown column '" + to_string(ref) + "'");
  }
  return it->second;
}

TypeInference infer_column_type(std::span<const std::string> values) {
  if (values.empty()) return {ColumnType::String, true};
  std::size_t numeric = 0;
  std::size_t dates = 0;
  for (const auto& v : values) {
    if (parses_as_number(v)) {
      ++numeric;
    } else if (parses_as_date(v)) {
      ++dates;
    }
  }
  const double n = static_cast<double>(values.size());
  if (static_cast<double>(numeric) >= kTypeThreshold * n) {
    return {ColumnType::Numeric, false};
  }
  if (static_cast<double>(dates) >= kTypeThreshold * n) {
    return {ColumnType::Date, false};
  }
  return {ColumnType::String, false};
}

ColumnProfile profile_column(const CsvTable& table, std::string_view table_id,
                             std::string_view column_name,
                             std::uint64_t sample_cap, std::uint64_t seed) {
  int index = table.find_column(column_name);
  if (index < 0) {
    throw DataError("table '" + std::string(table_id) + "' has no column '" +
                    std::string(column_name) + "'");
  }
  if (sample_cap == 0) throw ConfigError("sample_cap must be positive");

  std::vector<std::string> values;
  values.reserve(table.row_count);
  for (const auto& raw : table.columns[static_cast<std::size_t>(index)]) {
    if (auto v = normalize_value(raw)) values.push_back(std::move(*v));
  }

  ColumnProfile profile;
  profile.ref = {std::string(table_id), std::string(column_name)};
  profile.total_rows = table.row_count;
  profile.non_null_count = values.size();

  if (values.size() > sample_cap) {
    std::mt19937_64 rng(column_stream_seed(seed, table_id, column_name));
    std::vector<std::string> sample;
    sample.reserve(sample_cap);
    std::ranges::sample(values, std::back_inserter(sample),
                        static_cast<std::ptrdiff_t>(sample_cap), rng);
    values = std::move(sample);
  }

  auto type = infer_column_type(values);
  profile.inferred_type = type.type;
  profile.type_warning = type.warning;
  profile.sample_size = values.size();
  profile.frequent_values = frequency_table(values);
  profile.distinct_count = profile.frequent_values.size();
  return profile;
}

ColumnProfile summarize_profile(const ColumnProfile& profile, std::size_t keep) {
  ColumnProfile out = profile;
  if (out.frequent_values.size() > keep) {
    out.frequent_values.resize(keep);
    out.summarized = true;
  }
  return out;
}

std::string build_metadata_sentence(const TableMeta& table,
                                    std::string_view column_name) {
  std::vector<std::string> segments;
  auto add = [&](std::string_view label, std::string_view text) {
    std::string folded = fold_text(text);
    if (!folded.empty()) segments.push_back(std::string(label) + ": " + folded);
  };
  add("table", table.name.empty() ? table.table_id : table.name);
  if (table.description) add("description", *table.description);
  if (!table.tags.empty()) {
    std::vector<std::string> tags;
    for (const auto& t : table.tags) {
      std::string f = fold_text(t);
      if (!f.empty()) tags.push_back(std::move(f));
    }
    add("tags", join(tags, ", "));
  }
  if (table.source) add("source", *table.source);
  add("column", column_name);
  std::vector<std::string> names;
  for (const auto& c : table.column_names) names.push_back(fold_text(c));
  add("columns", join(names, ", "));
  return join(segments, ". ") + ".";
}

std::string build_metadata_sentence(const DataLakeCatalog& catalog,
                                    const ColumnRef& ref) {
  if (!catalog.contains(ref)) {
    throw DataError("unknown column '" + to_string(ref) + "'");
  }
  return build_metadata_sentence(catalog.table(ref.table_id), ref.column_name);
}

std::string build_value_sentence(std::span<const std::string> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i];
  }
  return out;
}

std::string build_value_sentence(const ColumnProfile& profile,
                                 std::size_t max_values) {
  std::string out;
  std::size_t n = std::min(max_values, profile.frequent_values.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ", ";
    out += profile.frequent_values[i].value;
  }
  return out;
}

TableMeta read_table_meta(const CsvTable& table, std::string_view table_id,
                          const std::filesystem::path& sidecar) {
  TableMeta meta;
  meta.table_id = std::string(table_id);
  meta.name = std::string(table_id);
  meta.row_count = table.row_count;
  meta.column_names = table.header;
  if (sidecar.empty() || !std::filesystem::exists(sidecar)) return meta;

  std::ifstream in(sidecar);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(sidecar.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw DataError(sidecar.string() + ": expected an object");
  auto text_field = [&](const char* key) -> std::optional<std::string> {
    if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
    if (!doc[key].is_string()) {
      throw DataError(sidecar.string() + ": field '" + key + "' must be a string");
    }
    return doc[key].get<std::string>();
  };
  if (auto name = text_field("name")) meta.name = *name;
  meta.description = text_field("description");
  meta.source = text_field("source");
  if (doc.contains("tags") && !doc["tags"].is_null()) {
    if (!doc["tags"].is_array()) {
      throw DataError(sidecar.string() + ": field 'tags' must be an array");
    }
    for (const auto& t : doc["tags"]) {
      if (!t.is_string()) {
        throw DataError(sidecar.string() + ": 'tags' entries must be strings");
      }
      meta.tags.push_back(t.get<std::string>());
    }
  }
  return meta;
}

void add_table(DataLakeCatalog& catalog, const CsvTable& table, TableMeta meta,
               const IngestOptions& options) {
  if (catalog.tables.contains(meta.table_id)) {
    throw DataError("duplicate table id '" + meta.table_id + "'");
  }
  for (const auto& column : table.header) {
    auto profile = profile_column(table, meta.table_id, column,
                                  options.sample_cap, options.seed);
    catalog.columns.emplace(profile.ref, std::move(profile));
  }
  std::string id = meta.table_id;
  catalog.tables.emplace(std::move(id), std::move(meta));
}

IngestResult ingest_datalake(const std::filesystem::path& dir,
                             const IngestOptions& options) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw DataError("not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::ranges::sort(files);

  struct Parsed {
    std::optional<DataLakeCatalog> part;
    std::vector<IngestIssue> issues;
  };
  std::vector<Parsed> parsed(files.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const fs::path& file = files[i];
      std::string table_id = file.stem().string();
      try {
        CsvTable table = read_csv(file);
        TableMeta meta;
        fs::path sidecar = file.parent_path() / (table_id + ".meta.json");
        try {
          meta = read_table_meta(table, table_id, sidecar);
        } catch (const DataError& e) {
          parsed[i].issues.push_back({sidecar, e.what()});
          meta = read_table_meta(table, table_id, {});
        }
        DataLakeCatalog part;
        add_table(part, table, std::move(meta), options);
        parsed[i].part = std::move(part);
      } catch (const Error& e) {
        parsed[i].issues.push_back({file, e.what()});
      }
    }
  };

  unsigned threads = options.threads ? options.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(files.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  IngestResult result;
  for (auto& p : parsed) {
    for (auto& issue : p.issues) result.issues.push_back(std::move(issue));
    if (!p.part) continue;
    result.catalog.tables.merge(p.part->tables);
    result.catalog.columns.merge(p.part->columns);
  }
  return result;
}

}  // namespace joinrank
