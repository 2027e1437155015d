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

#include <compare>
#include <string>

namespace joinrank {

// Identity of one data-lake column. Ordering (table_id, column_name) is the
// deterministic tie-break used by every ranking in the library.
struct ColumnRef {
  std::string table_id;
  std::string column_name;

  friend auto operator<=>(const ColumnRef&, const ColumnRef&) = default;
  friend bool operator==(const ColumnRef&, const ColumnRef&) = default;
};

inline std::string to_string(const ColumnRef& ref) {
  return ref.table_id + "." + ref.column_name;
}

}  // namespace joinrank
