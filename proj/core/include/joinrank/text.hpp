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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace joinrank {

// Unicode NFKC, lowercase, trim, and collapse internal whitespace runs to a
// single ASCII space. Never drops a value; see normalize_value for that.
std::string fold_text(std::string_view raw);

// fold_text followed by null-token filtering. Returns nullopt for values in
// {"", "na", "n/a", "null", "none", "-", "nan"} (compared after folding).
std::optional<std::string> normalize_value(std::string_view raw);

bool is_null_token(std::string_view folded);

// True if the whole string is a finite decimal number ("12", "-3.5",
// "1e6", "+4"). Infinity spellings are rejected.
bool parses_as_number(std::string_view value);

// Accepted date layouts: YYYY-MM-DD, YYYY/MM/DD, MM/DD/YYYY, DD.MM.YYYY,
// each optionally followed by "T" or " " and hh:mm[:ss].
bool parses_as_date(std::string_view value);

// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD.
std::vector<char32_t> decode_utf8(std::string_view text);
void append_utf8(std::string& out, char32_t cp);

}  // namespace joinrank
