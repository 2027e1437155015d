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

// Shared fixture helpers: temporary directories, file IO and seeded
// synthetic data lakes.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#ifndef JOINRANK_COUNTY_LAKE_DIR
#error "JOINRANK_COUNTY_LAKE_DIR must point at the county fixture lake"
#endif

namespace joinrank::testing {

inline std::filesystem::path county_lake_dir() { return JOINRANK_COUNTY_LAKE_DIR; }

class TempDir {
 public:
  explicit TempDir(const std::string& tag = "jr") {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            (tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::uintmax_t dir_size(const std::filesystem::path& dir) {
  std::uintmax_t total = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) total += e.file_size();
  return total;
}

// CSV text from named columns of equal length. Values must not need quoting.
inline std::string make_csv(const std::vector<std::pair<std::string, std::vector<std::string>>>& cols) {
  std::string out;
  for (std::size_t c = 0; c < cols.size(); ++c) out += (c ? "," : "") + cols[c].first;
  out += "\n";
  const std::size_t rows = cols.empty() ? 0 : cols[0].second.size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) out += (c ? "," : "") + cols[c].second[r];
    out += "\n";
  }
  return out;
}

// Every value of `distinct` repeated `per_value` times, shuffled.
inline std::vector<std::string> uniform_column(const std::vector<std::string>& distinct,
                                               std::size_t per_value, std::mt19937_64& rng) {
  std::vector<std::string> out;
  out.reserve(distinct.size() * per_value);
  for (const auto& v : distinct)
    for (std::size_t i = 0; i < per_value; ++i) out.push_back(v);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

// Zipf(1) frequencies: the value at rank i (1-based) appears
// ceil(top / i) times. Ranks are assigned to values by a random permutation.
inline std::vector<std::string> zipf_column(std::vector<std::string> distinct, std::size_t top,
                                            std::mt19937_64& rng) {
  std::shuffle(distinct.begin(), distinct.end(), rng);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    const std::size_t reps = (top + i) / (i + 1);
    for (std::size_t k = 0; k < reps; ++k) out.push_back(distinct[i]);
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

inline std::vector<std::string> token_range(const std::string& prefix, std::size_t from,
                                            std::size_t to) {
  std::vector<std::string> out;
  for (std::size_t i = from; i < to; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Runs a shell command and returns {exit status, stdout}.
inline std::pair<int, std::string> run_command(const std::string& cmd) {
  std::string out;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, out};
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace joinrank::testing
