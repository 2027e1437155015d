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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace joinrank {

// A parsed CSV table in column-major layout. Cells are raw (unnormalized).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> columns;
  std::size_t row_count = 0;

  // Index of a header name, or -1.
  int find_column(std::string_view name) const;
};

// RFC-4180 parsing: comma separated, double-quote quoting with "" escapes,
// CRLF or LF records, quoted fields may span lines. A leading UTF-8 BOM is
// skipped. Short rows are padded with empty cells; rows longer than the
// header raise DataError with the record number. Blank or duplicate header
// names are made unique ("column_3", "name_2").
CsvTable parse_csv(std::string_view text, std::string_view source_name = "<memory>");
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace joinrank
