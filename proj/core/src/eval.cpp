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

#include "joinrank/eval.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "joinrank/error.hpp"

namespace joinrank {

using json = nlohmann::json;

namespace {

__extension__ using int128 = __int128;

Fraction reduce128(int128 n, int128 d) {
  if (d == 0) throw std::domain_error("fraction with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  int128 a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  constexpr int128 kMax = std::numeric_limits<std::int64_t>::max();
  if (n > kMax || -n > kMax || d > kMax) throw std::overflow_error("fraction overflow");
  Fraction f;
  f.num = static_cast<std::int64_t>(n);
  f.den = static_cast<std::int64_t>(d);
  return f;
}

std::string strip_csv(std::string name) {
  if (name.size() > 4 && name.ends_with(".csv")) name.resize(name.size() - 4);
  return name;
}

std::size_t cutoff(std::span<const ColumnRef> ranking, std::size_t k) {
  return std::min(ranking.size(), k);
}

json fraction_json(const Fraction& f) {
  return {{"value", f.value()}, {"exact", to_string(f)}};
}

}  // namespace

Fraction::Fraction(std::int64_t n, std::int64_t d) { *this = reduce128(n, d); }

Fraction operator+(const Fraction& a, const Fraction& b) {
  return reduce128(static_cast<int128>(a.num) * b.den + static_cast<int128>(b.num) * a.den,
                   static_cast<int128>(a.den) * b.den);
}

Fraction operator/(const Fraction& a, std::int64_t d) {
  return reduce128(a.num, static_cast<int128>(a.den) * d);
}

std::string to_string(const Fraction& f) {
  if (f.den == 1) return std::to_string(f.num);
  return std::to_string(f.num) + "/" + std::to_string(f.den);
}

GroundTruth parse_ground_truth(std::string_view text, std::string_view source) {
  GroundTruth truth;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(where + "invalid JSON: " + e.what());
    }
    auto text_field = [&](const char* key) {
      if (!doc.is_object() || !doc.contains(key) || !doc[key].is_string()) {
        throw DataError(where + "field '" + key + "' missing or not a string");
      }
      return doc[key].get<std::string>();
    };
    ColumnRef query{strip_csv(text_field("query_table")), text_field("query_column")};
    ColumnRef target{strip_csv(text_field("target_table")), text_field("target_column")};
    if (!doc.contains("label") || !doc["label"].is_number_integer()) {
      throw DataError(where + "field 'label' missing or not an integer");
    }
    auto label = doc["label"].get<int>();
    if (label != 0 && label != 1) throw DataError(where + "field 'label' must be 0 or 1");
    auto& relevant = truth.relevant[query];
    if (label == 1) relevant.insert(target);
  }
  return truth;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_ground_truth(buffer.str(), path.string());
}

Fraction reciprocal_rank(std::span<const ColumnRef> ranking,
                         const std::set<ColumnRef>& relevant, std::size_t k) {
  for (std::size_t i = 0; i < cutoff(ranking, k); ++i) {
    if (relevant.contains(ranking[i])) return Fraction(1, static_cast<std::int64_t>(i + 1));
  }
  return {};
}

Fraction average_precision(std::span<const ColumnRef> ranking,
                           const std::set<ColumnRef>& relevant, std::size_t k) {
  if (relevant.empty() || k == 0) return {};
  Fraction sum;
  std::int64_t hits = 0;
  for (std::size_t i = 0; i < cutoff(ranking, k); ++i) {
    if (!relevant.contains(ranking[i])) continue;
    ++hits;
    sum = sum + Fraction(hits, static_cast<std::int64_t>(i + 1));
  }
  return sum / static_cast<std::int64_t>(std::min(relevant.size(), k));
}

Fraction recall_at_k(std::span<const ColumnRef> ranking, const std::set<ColumnRef>& relevant,
                     std::size_t k) {
  if (relevant.empty()) return {};
  std::int64_t hits = 0;
  for (std::size_t i = 0; i < cutoff(ranking, k); ++i) hits += relevant.contains(ranking[i]);
  return Fraction(hits, static_cast<std::int64_t>(relevant.size()));
}

EvalReport evaluate(const ResultsByQuery& results, const GroundTruth& truth, std::size_t k,
                    const std::set<ColumnRef>* indexed) {
  if (k == 0) throw ConfigError("k must be at least 1");
  EvalReport report;
  report.k = k;
  Fraction rr_sum, ap_sum, recall_sum;
  bool exact = true;
  double rr_d = 0.0, ap_d = 0.0, recall_d = 0.0;

  for (const auto& [query, relevant] : truth.relevant) {
    QueryEval q;
    q.query = query;
    q.empty_relevant = relevant.empty();
    if (indexed) {
      for (const auto& target : relevant) {
        if (!indexed->contains(target)) q.unindexed_targets.push_back(target);
      }
    }
    auto it = results.find(query);
    if (it == results.end()) {
      q.missing_results = true;
    } else if (!q.empty_relevant) {
      q.reciprocal_rank = reciprocal_rank(it->second, relevant, k);
      q.average_precision = average_precision(it->second, relevant, k);
      q.recall = recall_at_k(it->second, relevant, k);
    }
    if (!q.empty_relevant) {
      ++report.evaluated;
      rr_d += q.reciprocal_rank.value();
      ap_d += q.average_precision.value();
      recall_d += q.recall.value();
      if (exact) {
        try {
          rr_sum = rr_sum + q.reciprocal_rank;
          ap_sum = ap_sum + q.average_precision;
          recall_sum = recall_sum + q.recall;
        } catch (const std::overflow_error&) {
          exact = false;
        }
      }
    }
    report.per_query.push_back(std::move(q));
  }

  if (report.evaluated > 0) {
    const auto n = static_cast<std::int64_t>(report.evaluated);
    if (exact) {
      try {
        report.mrr_exact = rr_sum / n;
        report.map_exact = ap_sum / n;
        report.recall_exact = recall_sum / n;
      } catch (const std::overflow_error&) {
        report.mrr_exact.reset();
        report.map_exact.reset();
        report.recall_exact.reset();
      }
    }
    // Prefer the exact quotient when available so both views agree.
    report.mrr = report.mrr_exact ? report.mrr_exact->value() : rr_d / static_cast<double>(n);
    report.map = report.map_exact ? report.map_exact->value() : ap_d / static_cast<double>(n);
    report.recall = report.recall_exact ? report.recall_exact->value()
                                        : recall_d / static_cast<double>(n);
  }
  return report;
}

std::string report_to_json(const EvalReport& report, int indent) {
  json doc;
  doc["k"] = report.k;
  doc["evaluated_queries"] = report.evaluated;
  json agg{{"mrr", report.mrr}, {"map", report.map}, {"recall", report.recall}};
  if (report.mrr_exact) {
    agg["mrr_exact"] = to_string(*report.mrr_exact);
    agg["map_exact"] = to_string(*report.map_exact);
    agg["recall_exact"] = to_string(*report.recall_exact);
  }
  doc["aggregate"] = std::move(agg);
  json rows = json::array();
  for (const auto& q : report.per_query) {
    json row{{"query_table", q.query.table_id},
             {"query_column", q.query.column_name},
             {"reciprocal_rank", fraction_json(q.reciprocal_rank)},
             {"average_precision", fraction_json(q.average_precision)},
             {"recall", fraction_json(q.recall)}};
    json flags = json::array();
    if (q.empty_relevant) flags.push_back("empty_relevant_set");
    if (q.missing_results) flags.push_back("missing_results");
    if (!q.unindexed_targets.empty()) flags.push_back("unindexed_targets");
    row["flags"] = std::move(flags);
    json unindexed = json::array();
    for (const auto& t : q.unindexed_targets) unindexed.push_back(to_string(t));
    row["unindexed_targets"] = std::move(unindexed);
    rows.push_back(std::move(row));
  }
  doc["per_query"] = std::move(rows);
  return doc.dump(indent);
}

std::string report_to_table(const EvalReport& report) {
  std::size_t width = 5;
  for (const auto& q : report.per_query) width = std::max(width, to_string(q.query).size());
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << std::left << std::setw(static_cast<int>(width)) << "query" << "  " << std::right
      << std::setw(8) << "RR" << std::setw(8) << "AP" << std::setw(8) << "R@" + std::to_string(report.k)
      << "  flags\n";
  for (const auto& q : report.per_query) {
    out << std::left << std::setw(static_cast<int>(width)) << to_string(q.query) << "  "
        << std::right << std::setw(8) << q.reciprocal_rank.value() << std::setw(8)
        << q.average_precision.value() << std::setw(8) << q.recall.value() << "  ";
    if (q.empty_relevant) out << "empty-relevant ";
    if (q.missing_results) out << "missing-results ";
    if (!q.unindexed_targets.empty()) out << "unindexed-targets ";
    out << "\n";
  }
  out << std::left << std::setw(static_cast<int>(width)) << "mean" << "  " << std::right
      << std::setw(8) << report.mrr << std::setw(8) << report.map << std::setw(8)
      << report.recall << "  (" << report.evaluated << " queries)\n";
  return out.str();
}

}  // namespace joinrank
