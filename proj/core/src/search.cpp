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

#include "joinrank/search.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "joinrank/error.hpp"
#include "joinrank/text.hpp"

namespace joinrank {

using json = nlohmann::json;

namespace {

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

json weights_json(const CriterionWeights& w) {
  json out = json::object();
  for (auto id : kAllCriteria) out[std::string(to_string(id))] = w[id];
  return out;
}

}  // namespace

SearchEngine::SearchEngine(const IndexBundle& bundle, EmbeddingProvider& provider)
    : bundle_(bundle), provider_(provider) {
  if (provider_.dim() != bundle_.config.embedding_dim) {
    throw ConfigError("embedding provider dim " + std::to_string(provider_.dim()) +
                      " does not match the bundle's " +
                      std::to_string(bundle_.config.embedding_dim));
  }
  if (provider_.kind() != bundle_.config.embedder) {
    throw ConfigError("bundle was indexed with the " +
                      std::string(to_string(bundle_.config.embedder)) +
                      " embedder but the search uses " +
                      std::string(to_string(provider_.kind())));
  }
}

QueryContext SearchEngine::lake_query(const ColumnRef& ref) const {
  QueryContext q;
  q.profile = bundle_.catalog.profile(ref);
  q.metadata_sentence = build_metadata_sentence(bundle_.catalog, ref);
  q.in_lake = true;
  const EmbeddingVector* meta = bundle_.meta_index.find(ref);
  const EmbeddingVector* value = bundle_.value_index.find(ref);
  if (meta && value) {
    q.metadata_embedding = *meta;
    q.value_embedding = *value;
  } else {
    std::vector<std::string> texts{
        q.metadata_sentence,
        build_value_sentence(q.profile, bundle_.config.value_sentence_max)};
    auto v = provider_.embed(texts);
    q.metadata_embedding = std::move(v.at(0));
    q.value_embedding = std::move(v.at(1));
  }
  return q;
}

QueryContext SearchEngine::external_query(const CsvTable& table, const TableMeta& meta,
                                          const std::string& column) const {
  QueryContext q;
  q.profile = profile_column(table, meta.table_id, column, bundle_.config.sample_cap,
                             bundle_.config.seed);
  q.metadata_sentence = build_metadata_sentence(meta, column);
  std::vector<std::string> texts{
      q.metadata_sentence, build_value_sentence(q.profile, bundle_.config.value_sentence_max)};
  auto v = provider_.embed(texts);
  if (v.size() != 2) throw ProtocolError("embedding provider returned a short batch");
  q.metadata_embedding = std::move(v[0]);
  q.value_embedding = std::move(v[1]);
  return q;
}

RankedResult SearchEngine::search(const ColumnRef& query, const SearchOptions& options) const {
  return search(lake_query(query), options);
}

RankedResult SearchEngine::search(const QueryContext& query,
                                  const SearchOptions& options) const {
  if (options.k == 0) throw ConfigError("k must be at least 1");
  if (options.top_n == 0) throw ConfigError("top_n must be at least 1");
  RankedResult result;
  result.query = query.profile.ref;
  result.mode = options.mode.value_or(bundle_.config.mode);

  const ColumnRef& ref = query.profile.ref;
  auto syntactic = syntactic_candidates(bundle_, query.profile, options.top_n, result.mode);
  auto metadata = metadata_candidates(bundle_, query.metadata_embedding, options.top_n, ref);
  auto values = value_candidates(bundle_, query.value_embedding, options.top_n, ref);
  CandidateSet candidates = merge_candidates(syntactic, metadata, values, ref);
  result.candidate_count = candidates.size();

  CriteriaOptions criteria;
  criteria.mode = result.mode;
  criteria.weights = options.weights;
  criteria.frequent_values = options.frequent_values;
  criteria.disjoint_sample = options.disjoint_sample;
  ScoredCandidates scored =
      build_decision_matrix(query, candidates, bundle_, provider_, criteria);
  result.criteria = scored.matrix.criteria;
  if (candidates.empty()) return result;

  TopsisResult ranked = topsis_rank(scored.matrix);
  const std::size_t n = std::min(options.k, ranked.ranking.size());
  for (std::size_t i = 0; i < n; ++i) {
    const TopsisEntry& e = ranked.ranking[i];
    RankedRow row;
    row.rank = i + 1;
    row.ref = e.ref;
    row.closeness = e.closeness;
    row.scores = scored.preferences[e.row];
    row.provenance = candidates.provenance.at(e.ref);
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string engine_config_to_json(const EngineConfig& config, int indent) {
  json doc = json::parse(config_to_json(config.bundle));
  doc["search"] = {{"k", config.search.k},
                   {"top_n_per_strategy", config.search.top_n},
                   {"mode", std::string(to_string(
                                config.search.mode.value_or(config.bundle.mode)))},
                   {"raw_weights", weights_json(config.search.weights)},
                   {"frequent_values", config.search.frequent_values},
                   {"disjoint_sample", config.search.disjoint_sample}};
  return doc.dump(indent);
}

std::string result_to_json(const RankedResult& result, const EngineConfig& config,
                           int indent) {
  json doc;
  doc["query"] = {{"table", result.query.table_id}, {"column", result.query.column_name}};
  doc["mode"] = std::string(to_string(result.mode));
  doc["candidate_count"] = result.candidate_count;
  json criteria = json::array();
  for (const auto& c : result.criteria) {
    criteria.push_back({{"name", std::string(to_string(c.id))},
                        {"direction", c.direction == Direction::Cost ? "cost" : "benefit"},
                        {"weight", c.weight}});
  }
  doc["criteria"] = std::move(criteria);
  json rows = json::array();
  for (const auto& row : result.rows) {
    json scores = json::object();
    for (auto id : kAllCriteria) {
      const auto i = index_of(id);
      scores[std::string(to_string(id))] =
          row.scores.applicable[i] ? json(row.scores.scores[i]) : json(nullptr);
    }
    json provenance = json::array();
    for (auto name : row.provenance.names()) provenance.push_back(std::string(name));
    rows.push_back({{"rank", row.rank},
                    {"table", row.ref.table_id},
                    {"column", row.ref.column_name},
                    {"closeness", row.closeness},
                    {"scores", std::move(scores)},
                    {"provenance", std::move(provenance)}});
  }
  doc["results"] = std::move(rows);
  doc["config"] = json::parse(engine_config_to_json(config));
  return doc.dump(indent);
}

std::string result_to_table(const RankedResult& result) {
  std::size_t width = 6;
  for (const auto& row : result.rows) width = std::max(width, to_string(row.ref).size());
  std::ostringstream out;
  out << "query: " << to_string(result.query) << "  mode: " << to_string(result.mode)
      << "  candidates: " << result.candidate_count << "\n";
  out << std::setw(4) << "rank" << "  " << std::left << std::setw(static_cast<int>(width))
      << "column" << std::right << std::setw(10) << "closeness";
  static constexpr std::array<const char*, kCriterionCount> kShort{
      "uniq", "inter", "join", "rjoin", "vsem", "dvsem", "msem"};
  for (const char* s : kShort) out << std::setw(10) << s;
  out << "  via\n" << std::fixed;
  for (const auto& row : result.rows) {
    out << std::setw(4) << row.rank << "  " << std::left << std::setw(static_cast<int>(width))
        << to_string(row.ref) << std::right << std::setprecision(4) << std::setw(10)
        << row.closeness;
    for (auto id : kAllCriteria) {
      const auto i = index_of(id);
      if (row.scores.applicable[i]) {
        out << std::setprecision(3) << std::setw(10) << row.scores.scores[i];
      } else {
        out << std::setw(10) << "-";
      }
    }
    out << "  ";
    auto names = row.provenance.names();
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
    out << "\n";
  }
  return out.str();
}

std::vector<std::string> nearest_columns(const DataLakeCatalog& catalog,
                                         const std::string& wanted, std::size_t n) {
  const std::string target = fold_text(wanted);
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const auto& [ref, profile] : catalog.columns) {
    scored.emplace_back(edit_distance(target, fold_text(ref.column_name)), to_string(ref));
  }
  std::ranges::sort(scored);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(n, scored.size()); ++i) out.push_back(scored[i].second);
  return out;
}

}  // namespace joinrank
