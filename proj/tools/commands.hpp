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
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "joinrank/embedder.hpp"
#include "joinrank/indexes.hpp"
#include "joinrank/search.hpp"

namespace joinrank::cli {

inline constexpr const char* kEmbedUrlEnv = "JOINRANK_EMBED_URL";

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kProviderError = 3 };

struct IndexCommand {
  std::filesystem::path lake_dir;
  std::filesystem::path out_dir;
  BundleConfig bundle;
  std::optional<std::string> embed_url;
};

struct SearchCommand {
  std::filesystem::path index_dir;
  std::string query;  // "path/to/table.csv:Column"
  SearchOptions options;
  std::optional<std::string> weights_json;
  bool pretty = false;
  std::optional<std::string> embed_url;
};

struct EvalCommand {
  std::filesystem::path index_dir;
  std::filesystem::path truth;
  SearchOptions options;
  std::optional<std::string> weights_json;
  bool pretty = false;
  std::optional<std::string> embed_url;
};

int run_index(const IndexCommand& cmd, std::ostream& out, std::ostream& err);
int run_search(const SearchCommand& cmd, std::ostream& out, std::ostream& err);
int run_eval(const EvalCommand& cmd, std::ostream& out, std::ostream& err);

// Applies {"criterion_name": weight, ...} on top of `weights`.
CriterionWeights parse_weights(const std::string& text, CriterionWeights weights = {});

// Splits "path:Column" at the last colon.
std::pair<std::string, std::string> split_query(const std::string& query);

int exit_code_for(const std::exception& e);

}  // namespace joinrank::cli
