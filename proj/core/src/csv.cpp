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

#include "joinrank/csv.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "joinrank/error.hpp"

namespace joinrank {
namespace {

class RecordReader {
 public:
  explicit RecordReader(std::string_view text) : text_(text) {
    if (text_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
  }

  // Reads one record into `fields`; returns false at end of input.
  bool next(std::vector<std::string>& fields, std::string_view source) {
    fields.clear();
    if (pos_ >= text_.size()) return false;
    ++record_;
    std::string field;
    bool quoted = false;
    bool after_quote = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_++];
      if (quoted) {
        if (c == '"') {
          if (pos_ < text_.size() && text_[pos_] == '"') {
            field.push_back('"');
            ++pos_;
          } else {
            quoted = false;
            after_quote = true;
          }
        } else {
          field.push_back(c);
        }
        continue;
      }
      if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
        after_quote = false;
      } else if (c == '\n' || c == '\r') {
        if (c == '\r' && pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
        fields.push_back(std::move(field));
        return true;
      } else if (c == '"' && field.empty() && !after_quote) {
        quoted = true;
      } else {
        field.push_back(c);
      }
    }
    if (quoted) {
      std::ostringstream msg;
      msg << source << ": unterminated quoted field in record " << record_;
      throw DataError(msg.str());
    }
    fields.push_back(std::move(field));
    return true;
  }

  std::size_t record() const { return record_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t record_ = 0;
};

bool blank_record(const std::vector<std::string>& fields) {
  return fields.size() == 1 && fields[0].empty();
}

}  // namespace

int CsvTable::find_column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable parse_csv(std::string_view text, std::string_view source_name) {
  RecordReader reader(text);
  std::vector<std::string> fields;
  CsvTable table;

  while (reader.next(fields, source_name)) {
    if (!blank_record(fields)) break;
  }
  if (fields.empty() || blank_record(fields)) {
    throw DataError(std::string(source_name) + ": missing header row");
  }

  std::set<std::string> seen;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    std::string name = fields[i];
    if (name.find_first_not_of(" \t") == std::string::npos) {
      name = "column_" + std::to_string(i + 1);
    }
    std::string unique = name;
    for (int n = 2; seen.contains(unique); ++n) {
      unique = name + "_" + std::to_string(n);
    }
    seen.insert(unique);
    table.header.push_back(std::move(unique));
  }
  table.columns.resize(table.header.size());

  while (reader.next(fields, source_name)) {
    if (blank_record(fields)) continue;
    if (fields.size() > table.header.size()) {
      std::ostringstream msg;
      msg << source_name << ": record " << reader.record() << " has "
          << fields.size() << " fields, header has " << table.header.size();
      throw DataError(msg.str());
    }
    fields.resize(table.header.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      table.columns[c].push_back(std::move(fields[c]));
    }
    ++table.row_count;
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), path.string());
}

}  // namespace joinrank
