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

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "joinrank/datalake.hpp"
#include "joinrank/error.hpp"

namespace joinrank {

using json = nlohmann::json;

namespace {

class FieldReader {
 public:
  explicit FieldReader(std::string_view source) : source_(source) {}

  const json& at(const json& obj, const char* key) const {
    if (!obj.is_object() || !obj.contains(key)) fail(key, "missing");
    return obj.at(key);
  }

  template <typename T>
  T get(const json& obj, const char* key) const {
    const json& v = at(obj, key);
    try {
      return v.get<T>();
    } catch (const json::exception&) {
      fail(key, "has the wrong type");
    }
  }

  std::optional<std::string> optional_string(const json& obj, const char* key) const {
    if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
    return get<std::string>(obj, key);
  }

  [[noreturn]] void fail(const char* key, const char* what) const {
    throw FormatError(std::string(source_) + ": field '" + key + "' " + what);
  }

 private:
  std::string source_;
};

}  // namespace

std::string catalog_to_json(const DataLakeCatalog& catalog, int indent) {
  json doc;
  doc["format_version"] = kCatalogFormatVersion;
  json tables = json::array();
  for (const auto& [id, t] : catalog.tables) {
    json jt{{"table_id", t.table_id},
            {"name", t.name},
            {"tags", t.tags},
            {"row_count", t.row_count},
            {"column_names", t.column_names}};
    jt["description"] = t.description ? json(*t.description) : json(nullptr);
    jt["source"] = t.source ? json(*t.source) : json(nullptr);
    tables.push_back(std::move(jt));
  }
  doc["tables"] = std::move(tables);

  json columns = json::array();
  for (const auto& [ref, p] : catalog.columns) {
    json values = json::array();
    for (const auto& vc : p.frequent_values) values.push_back({vc.value, vc.count});
    columns.push_back({{"table_id", ref.table_id},
                       {"column_name", ref.column_name},
                       {"inferred_type", std::string(to_string(p.inferred_type))},
                       {"type_warning", p.type_warning},
                       {"total_rows", p.total_rows},
                       {"non_null_count", p.non_null_count},
                       {"distinct_count", p.distinct_count},
                       {"sample_size", p.sample_size},
                       {"summarized", p.summarized},
                       {"frequent_values", std::move(values)}});
  }
  doc["columns"] = std::move(columns);
  return doc.dump(indent);
}

DataLakeCatalog catalog_from_json(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string(source) + ": " + e.what());
  }
  FieldReader r(source);
  int version = r.get<int>(doc, "format_version");
  if (version != kCatalogFormatVersion) {
    throw FormatError(std::string(source) + ": unsupported format_version " +
                      std::to_string(version) + " (expected " +
                      std::to_string(kCatalogFormatVersion) + ")");
  }

  DataLakeCatalog catalog;
  for (const auto& jt : r.at(doc, "tables")) {
    TableMeta t;
    t.table_id = r.get<std::string>(jt, "table_id");
    t.name = r.get<std::string>(jt, "name");
    t.description = r.optional_string(jt, "description");
    t.source = r.optional_string(jt, "source");
    t.tags = r.get<std::vector<std::string>>(jt, "tags");
    t.row_count = r.get<std::uint64_t>(jt, "row_count");
    t.column_names = r.get<std::vector<std::string>>(jt, "column_names");
    std::string id = t.table_id;
    catalog.tables.emplace(std::move(id), std::move(t));
  }
  for (const auto& jc : r.at(doc, "columns")) {
    ColumnProfile p;
    p.ref = {r.get<std::string>(jc, "table_id"), r.get<std::string>(jc, "column_name")};
    if (!catalog.tables.contains(p.ref.table_id)) {
      r.fail("table_id", "refers to an unknown table");
    }
    p.inferred_type = column_type_from_string(r.get<std::string>(jc, "inferred_type"));
    p.type_warning = r.get<bool>(jc, "type_warning");
    p.total_rows = r.get<std::uint64_t>(jc, "total_rows");
    p.non_null_count = r.get<std::uint64_t>(jc, "non_null_count");
    p.distinct_count = r.get<std::uint64_t>(jc, "distinct_count");
    p.sample_size = r.get<std::uint64_t>(jc, "sample_size");
    p.summarized = r.get<bool>(jc, "summarized");
    for (const auto& pair : r.at(jc, "frequent_values")) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
          !pair[1].is_number_unsigned()) {
        r.fail("frequent_values", "entry is not a [value, count] pair");
      }
      p.frequent_values.push_back({pair[0].get<std::string>(),
                                   pair[1].get<std::uint64_t>()});
    }
    ColumnRef ref = p.ref;
    catalog.columns.emplace(std::move(ref), std::move(p));
  }
  return catalog;
}

void save_catalog(const DataLakeCatalog& catalog, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << catalog_to_json(catalog);
}

DataLakeCatalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return catalog_from_json(buffer.str(), path.filename().string());
}

}  // namespace joinrank
