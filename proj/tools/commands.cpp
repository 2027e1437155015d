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

#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "joinrank/error.hpp"

namespace joinrank::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::optional<std::string> resolve_endpoint(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return flag;
  if (const char* env = std::getenv(kEmbedUrlEnv); env && *env) return std::string(env);
  return std::nullopt;
}

std::unique_ptr<EmbeddingProvider> provider_for(const BundleConfig& bundle,
                                                const std::optional<std::string>& url) {
  EmbeddingProviderConfig config;
  config.kind = bundle.embedder;
  config.dim = bundle.embedding_dim;
  config.seed = bundle.embedding_seed;
  if (bundle.embedder == ProviderKind::Remote) {
    config.endpoint = resolve_endpoint(url);
    if (!config.endpoint) {
      throw ConfigError(std::string("bundle uses the remote embedder; pass --embed-url or set ") +
                        kEmbedUrlEnv);
    }
  }
  return make_provider(config);
}

SearchOptions with_weights(SearchOptions options, const std::optional<std::string>& weights) {
  if (weights) options.weights = parse_weights(*weights, options.weights);
  return options;
}

QueryContext resolve_query(const SearchEngine& engine, const std::string& query) {
  auto [path_part, column] = split_query(query);
  fs::path path(path_part);
  std::string table_id =
      path.extension() == ".csv" ? path.stem().string() : path.filename().string();
  const DataLakeCatalog& catalog = engine.bundle().catalog;

  ColumnRef ref{table_id, column};
  if (catalog.contains(ref)) return engine.lake_query(ref);

  if (fs::is_regular_file(path)) {
    CsvTable table = read_csv(path);
    if (table.find_column(column) >= 0) {
      std::string external_id = catalog.tables.contains(table_id) ? "external:" + table_id
                                                                  : table_id;
      TableMeta meta = read_table_meta(table, external_id,
                                       path.parent_path() / (path.stem().string() + ".meta.json"));
      meta.table_id = external_id;
      return engine.external_query(table, meta, column);
    }
  }

  std::string message = "cannot resolve query '" + query + "'";
  auto near = nearest_columns(catalog, column);
  if (!near.empty()) {
    message += "; nearest columns:";
    for (const auto& n : near) message += " " + n;
  }
  throw DataError(message);
}

std::uintmax_t file_size_or_zero(const fs::path& p) {
  std::error_code ec;
  auto size = fs::file_size(p, ec);
  return ec ? 0 : size;
}

}  // namespace

std::pair<std::string, std::string> split_query(const std::string& query) {
  auto colon = query.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == query.size()) {
    throw ConfigError("query must look like <path>:<column>, got '" + query + "'");
  }
  return {query.substr(0, colon), query.substr(colon + 1)};
}

CriterionWeights parse_weights(const std::string& text, CriterionWeights weights) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("--weights: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("--weights must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number() || value.get<double>() < 0.0) {
      throw ConfigError("--weights: '" + key + "' must be a non-negative number");
    }
    weights[criterion_from_string(key)] = value.get<double>();
  }
  return weights;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ProviderError*>(&e)) return kProviderError;
  if (dynamic_cast<const DataError*>(&e)) return kDataError;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ValidationError*>(&e)) {
    return kUsage;
  }
  return kDataError;
}

int run_index(const IndexCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    BundleConfig config = cmd.bundle;
    EmbeddingProviderConfig provider_config;
    provider_config.kind = config.embedder;
    provider_config.dim = config.embedding_dim;
    provider_config.seed = config.embedding_seed;
    if (config.embedder == ProviderKind::Remote) {
      provider_config.endpoint = resolve_endpoint(cmd.embed_url);
      if (!provider_config.endpoint) {
        throw ConfigError(std::string("remote embedder needs --embed-url or ") + kEmbedUrlEnv);
      }
      provider_config.dim = RemoteEmbedder(provider_config).health();
      config.embedding_dim = provider_config.dim;
    }
    auto provider = make_provider(provider_config);

    IngestOptions ingest;
    ingest.sample_cap = config.sample_cap;
    ingest.seed = config.seed;
    IngestResult lake = ingest_datalake(cmd.lake_dir, ingest);
    for (const auto& issue : lake.issues) {
      err << "warning: " << issue.file.string() << ": " << issue.message << "\n";
    }
    if (lake.catalog.tables.empty()) {
      err << "error: no tables could be indexed from " << cmd.lake_dir.string() << "\n";
      return kDataError;
    }

    const std::size_t tables = lake.catalog.tables.size();
    const std::size_t columns = lake.catalog.columns.size();
    IndexBundle bundle = build_bundle(std::move(lake.catalog), config, *provider);
    persist_bundle(bundle, cmd.out_dir);

    json summary;
    summary["tables"] = tables;
    summary["columns"] = columns;
    summary["mode"] = std::string(to_string(config.mode));
    json bytes = json::object();
    std::uintmax_t total = 0;
    for (const char* name : {"catalog.json", "config.json", "inverted.bin", "minhash.bin",
                             "meta_embeddings.bin", "value_embeddings.bin"}) {
      if (!fs::exists(cmd.out_dir / name)) continue;
      auto size = file_size_or_zero(cmd.out_dir / name);
      bytes[name] = size;
      total += size;
    }
    summary["bytes"] = std::move(bytes);
    summary["total_bytes"] = total;
    json issues = json::array();
    for (const auto& issue : lake.issues) {
      issues.push_back({{"file", issue.file.string()}, {"message", issue.message}});
    }
    summary["issues"] = std::move(issues);
    summary["config"] = json::parse(config_to_json(config));
    out << summary.dump(2) << "\n";
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int run_search(const SearchCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    IndexBundle bundle = load_bundle(cmd.index_dir);
    auto provider = provider_for(bundle.config, cmd.embed_url);
    SearchEngine engine(bundle, *provider);
    SearchOptions options = with_weights(cmd.options, cmd.weights_json);
    QueryContext query = resolve_query(engine, cmd.query);
    RankedResult result = engine.search(query, options);
    if (cmd.pretty) {
      out << result_to_table(result);
    } else {
      out << result_to_json(result, EngineConfig{bundle.config, options}) << "\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int run_eval(const EvalCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    IndexBundle bundle = load_bundle(cmd.index_dir);
    auto provider = provider_for(bundle.config, cmd.embed_url);
    SearchEngine engine(bundle, *provider);
    SearchOptions options = with_weights(cmd.options, cmd.weights_json);
    GroundTruth truth = load_ground_truth(cmd.truth);

    ResultsByQuery results;
    for (const auto& [query, relevant] : truth.relevant) {
      if (!bundle.catalog.contains(query)) {
        err << "warning: query " << to_string(query) << " is not in the index\n";
        continue;
      }
      RankedResult ranked = engine.search(query, options);
      auto& refs = results[query];
      for (const auto& row : ranked.rows) refs.push_back(row.ref);
    }
    std::set<ColumnRef> indexed;
    for (const auto& [ref, profile] : bundle.catalog.columns) indexed.insert(ref);
    EvalReport report = evaluate(results, truth, options.k, &indexed);

    if (cmd.pretty) {
      out << report_to_table(report);
    } else {
      json doc = json::parse(report_to_json(report));
      doc["config"] = json::parse(engine_config_to_json(EngineConfig{bundle.config, options}));
      out << doc.dump(2) << "\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace joinrank::cli
