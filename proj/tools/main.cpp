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

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace joinrank;

void add_search_flags(CLI::App* sub, SearchOptions& options, std::string& mode,
                      std::optional<std::string>& weights, bool& pretty,
                      std::optional<std::string>& embed_url) {
  sub->add_option("-k", options.k, "Number of results per query")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--top-n", options.top_n, "Candidates retrieved per strategy")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--mode", mode, "Syntactic matching: exact|minhash (default: bundle mode)")
      ->check(CLI::IsMember({"exact", "minhash"}));
  sub->add_option("--weights", weights,
                  R"(Raw criterion weights as JSON, e.g. '{"intersection_size":1}')");
  sub->add_flag("--pretty", pretty, "Print an aligned table instead of JSON");
  sub->add_option("--embed-url", embed_url, "Remote embedding service URL");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joinrank: multi-criteria joinable column search over CSV data lakes"};
  app.require_subcommand(1);

  cli::IndexCommand index_cmd;
  std::string index_mode = "exact";
  std::string embedder = "builtin";
  auto* index = app.add_subcommand("index", "Profile a directory of CSV tables and build indexes");
  index->add_option("dir", index_cmd.lake_dir, "Data lake directory (*.csv)")
      ->required()
      ->check(CLI::ExistingDirectory);
  index->add_option("--out", index_cmd.out_dir, "Output bundle directory")->required();
  index->add_option("--mode", index_mode, "exact (inverted index) or minhash")
      ->check(CLI::IsMember({"exact", "minhash"}))
      ->capture_default_str();
  index->add_option("--seed", index_cmd.bundle.seed, "Sampling and MinHash seed")
      ->capture_default_str();
  index->add_option("--sample-cap", index_cmd.bundle.sample_cap, "Values sampled per column")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  index->add_option("--row-cap", index_cmd.bundle.inverted_row_cap,
                    "Rows per column in the inverted index")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  index->add_option("--num-perm", index_cmd.bundle.num_perm, "MinHash permutations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  index->add_option("--summary-values", index_cmd.bundle.summary_values,
                    "Frequent values kept per column in minhash mode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  index->add_option("--embedder", embedder, "builtin or remote")
      ->check(CLI::IsMember({"builtin", "remote"}))
      ->capture_default_str();
  index->add_option("--embed-dim", index_cmd.bundle.embedding_dim, "Builtin embedding dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  index->add_option("--embed-url", index_cmd.embed_url, "Remote embedding service URL");

  cli::SearchCommand search_cmd;
  std::string search_mode;
  auto* search = app.add_subcommand("search", "Rank joinable columns for one query column");
  search->add_option("--index", search_cmd.index_dir, "Bundle directory")->required();
  search->add_option("--query", search_cmd.query, "Query column as <table.csv>:<column>")
      ->required();
  add_search_flags(search, search_cmd.options, search_mode, search_cmd.weights_json,
                   search_cmd.pretty, search_cmd.embed_url);

  cli::EvalCommand eval_cmd;
  std::string eval_mode;
  auto* eval = app.add_subcommand("eval", "Score searches against ground-truth labels");
  eval->add_option("--index", eval_cmd.index_dir, "Bundle directory")->required();
  eval->add_option("--truth", eval_cmd.truth, "Ground truth (JSON Lines)")
      ->required()
      ->check(CLI::ExistingFile);
  add_search_flags(eval, eval_cmd.options, eval_mode, eval_cmd.weights_json, eval_cmd.pretty,
                   eval_cmd.embed_url);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kUsage;
  }

  if (*index) {
    index_cmd.bundle.mode = search_mode_from_string(index_mode);
    index_cmd.bundle.embedder = provider_kind_from_string(embedder);
    return cli::run_index(index_cmd, std::cout, std::cerr);
  }
  if (*search) {
    if (!search_mode.empty()) search_cmd.options.mode = search_mode_from_string(search_mode);
    return cli::run_search(search_cmd, std::cout, std::cerr);
  }
  if (!eval_mode.empty()) eval_cmd.options.mode = search_mode_from_string(eval_mode);
  return cli::run_eval(eval_cmd, std::cout, std::cerr);
}
