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

// Bundle directory layout. All integers little-endian; strings are a u32
// byte length followed by UTF-8 bytes. Every .bin file starts with a 4-byte
// magic and a u32 format version.
//
//   inverted.bin          "JRII" ver u64:row_cap u32:ncols {str table, str column}*
//                         u64:nvalues {str value, u32:n, u32 column_id * n}*
//                         (values in byte order)
//   minhash.bin           "JRMH" ver u32:num_perm u64:seed u32:n
//                         {str table, str column, u64 * num_perm}*
//   meta_embeddings.bin   "JREM" ver u8:kind u32:dim u32:n
//   value_embeddings.bin         {str table, str column, f64 * dim}*
//   catalog.json, config.json    JSON, each with "format_version"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "joinrank/error.hpp"
#include "joinrank/indexes.hpp"

namespace joinrank {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

static_assert(std::endian::native == std::endian::little,
              "bundle IO assumes a little-endian host");

class BinaryWriter {
 public:
  BinaryWriter(const fs::path& path, std::string_view magic) : path_(path) {
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw DataError("cannot write " + path.string());
    out_.write(magic.data(), 4);
    u32(kBundleFormatVersion);
  }
  ~BinaryWriter() { out_.close(); }

  template <typename T>
  void raw(T v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void u8(std::uint8_t v) { raw(v); }
  void u32(std::uint32_t v) { raw(v); }
  void u64(std::uint64_t v) { raw(v); }
  void f64(double v) { raw(v); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void ref(const ColumnRef& r) {
    str(r.table_id);
    str(r.column_name);
  }
  void finish() {
    out_.flush();
    if (!out_) throw DataError("write failed: " + path_.string());
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

class BinaryReader {
 public:
  BinaryReader(const fs::path& path, std::string_view magic)
      : name_(path.filename().string()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    data_ = buffer.str();
    if (data_.size() < 4 || std::string_view(data_).substr(0, 4) != magic) {
      throw FormatError(name_ + ": bad magic (expected " + std::string(magic) + ")");
    }
    pos_ = 4;
    auto version = u32("format_version");
    if (version != kBundleFormatVersion) {
      throw FormatError(name_ + ": unsupported format_version " + std::to_string(version) +
                        " (expected " + std::to_string(kBundleFormatVersion) + ")");
    }
  }

  template <typename T>
  T raw(const char* field) {
    need(sizeof(T), field);
    T v;
    std::memcpy(&v, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::uint8_t u8(const char* field) { return raw<std::uint8_t>(field); }
  std::uint32_t u32(const char* field) { return raw<std::uint32_t>(field); }
  std::uint64_t u64(const char* field) { return raw<std::uint64_t>(field); }
  double f64(const char* field) { return raw<double>(field); }
  std::string str(const char* field) {
    auto n = u32(field);
    need(n, field);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  ColumnRef ref() {
    ColumnRef r;
    r.table_id = str("table_id");
    r.column_name = str("column_name");
    return r;
  }
  // Bounds a declared element count by the bytes left, so a corrupt count
  // fails here instead of in a huge allocation.
  std::uint64_t count(std::uint64_t n, std::size_t min_bytes_each, const char* field) {
    if (min_bytes_each && n > (data_.size() - pos_) / min_bytes_each) {
      fail(field, "count exceeds file size");
    }
    return n;
  }
  void finish() {
    if (pos_ != data_.size()) fail("<end>", "trailing bytes");
  }
  [[noreturn]] void fail(const char* field, const char* what) const {
    throw FormatError(name_ + ": field '" + field + "': " + what + " at byte " +
                      std::to_string(pos_));
  }

 private:
  void need(std::size_t n, const char* field) const {
    if (data_.size() - pos_ < n) fail(field, "truncated");
  }

  std::string name_;
  std::string data_;
  std::size_t pos_ = 0;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_inverted(const InvertedIndex& index, const fs::path& path) {
  BinaryWriter w(path, "JRII");
  w.u64(index.indexed_row_cap());
  w.u32(static_cast<std::uint32_t>(index.columns().size()));
  for (const auto& r : index.columns()) w.ref(r);
  std::vector<const std::pair<const std::string, std::vector<std::uint32_t>>*> sorted;
  sorted.reserve(index.postings().size());
  for (const auto& entry : index.postings()) sorted.push_back(&entry);
  std::ranges::sort(sorted, [](auto* a, auto* b) { return a->first < b->first; });
  w.u64(sorted.size());
  for (const auto* entry : sorted) {
    w.str(entry->first);
    w.u32(static_cast<std::uint32_t>(entry->second.size()));
    for (auto id : entry->second) w.u32(id);
  }
  w.finish();
}

InvertedIndex read_inverted(const fs::path& path) {
  BinaryReader r(path, "JRII");
  auto row_cap = r.u64("indexed_row_cap");
  auto ncols = r.count(r.u32("column_count"), 8, "column_count");
  std::vector<ColumnRef> columns;
  for (std::uint64_t i = 0; i < ncols; ++i) columns.push_back(r.ref());
  auto nvalues = r.count(r.u64("value_count"), 8, "value_count");
  std::unordered_map<std::string, std::vector<std::uint32_t>> postings;
  postings.reserve(nvalues);
  for (std::uint64_t i = 0; i < nvalues; ++i) {
    auto value = r.str("value");
    auto n = r.count(r.u32("posting_length"), 4, "posting_length");
    std::vector<std::uint32_t> ids;
    ids.reserve(n);
    for (std::uint64_t j = 0; j < n; ++j) {
      auto id = r.u32("column_id");
      if (id >= columns.size()) r.fail("column_id", "out of range");
      if (!ids.empty() && id <= ids.back()) r.fail("column_id", "posting list not sorted");
      ids.push_back(id);
    }
    postings.emplace(std::move(value), std::move(ids));
  }
  r.finish();
  return InvertedIndex(std::move(columns), std::move(postings), row_cap);
}

void write_minhash(const MinHashIndex& index, const fs::path& path) {
  BinaryWriter w(path, "JRMH");
  w.u32(static_cast<std::uint32_t>(index.num_perm));
  w.u64(index.seed);
  w.u32(static_cast<std::uint32_t>(index.signatures.size()));
  for (const auto& [ref, sig] : index.signatures) {
    w.ref(ref);
    for (auto s : sig.sig) w.u64(s);
  }
  w.finish();
}

MinHashIndex read_minhash(const fs::path& path) {
  BinaryReader r(path, "JRMH");
  MinHashIndex index;
  index.num_perm = r.u32("num_perm");
  if (index.num_perm == 0) r.fail("num_perm", "must be positive");
  index.seed = r.u64("seed");
  auto n = r.count(r.u32("signature_count"), 8 + 8 * index.num_perm, "signature_count");
  for (std::uint64_t i = 0; i < n; ++i) {
    MinHashSignature sig;
    sig.ref = r.ref();
    sig.sig.reserve(index.num_perm);
    for (std::size_t p = 0; p < index.num_perm; ++p) sig.sig.push_back(r.u64("signature"));
    ColumnRef key = sig.ref;
    index.signatures.emplace(std::move(key), std::move(sig));
  }
  r.finish();
  return index;
}

void write_embeddings(const EmbeddingIndex& index, const fs::path& path) {
  BinaryWriter w(path, "JREM");
  w.u8(index.kind == EmbeddingKind::ValueSentence ? 1 : 0);
  w.u32(static_cast<std::uint32_t>(index.dim));
  w.u32(static_cast<std::uint32_t>(index.entries.size()));
  for (const auto& [ref, vec] : index.entries) {
    w.ref(ref);
    for (double x : vec.values) w.f64(x);
  }
  w.finish();
}

EmbeddingIndex read_embeddings(const fs::path& path, EmbeddingKind expected) {
  BinaryReader r(path, "JREM");
  EmbeddingIndex index;
  auto kind = r.u8("kind");
  if (kind > 1) r.fail("kind", "unknown embedding kind");
  index.kind = kind == 1 ? EmbeddingKind::ValueSentence : EmbeddingKind::MetadataSentence;
  if (index.kind != expected) r.fail("kind", "unexpected embedding kind");
  index.dim = r.u32("dim");
  auto n = r.count(r.u32("entry_count"), 8 + 8 * index.dim, "entry_count");
  for (std::uint64_t i = 0; i < n; ++i) {
    ColumnRef ref = r.ref();
    EmbeddingVector v;
    v.values.reserve(index.dim);
    for (std::size_t d = 0; d < index.dim; ++d) v.values.push_back(r.f64("vector"));
    if (!index.entries.empty() && !(index.entries.back().first < ref)) {
      r.fail("table_id", "entries not sorted");
    }
    index.entries.emplace_back(std::move(ref), std::move(v));
  }
  r.finish();
  return index;
}

}  // namespace

std::string config_to_json(const BundleConfig& c, int indent) {
  json doc{{"format_version", c.format_version},
           {"mode", std::string(to_string(c.mode))},
           {"sample_cap", c.sample_cap},
           {"inverted_row_cap", c.inverted_row_cap},
           {"num_perm", c.num_perm},
           {"seed", c.seed},
           {"value_sentence_max", c.value_sentence_max},
           {"summary_values", c.summary_values},
           {"embedder",
            {{"kind", std::string(to_string(c.embedder))},
             {"dim", c.embedding_dim},
             {"seed", c.embedding_seed}}}};
  return doc.dump(indent);
}

BundleConfig config_from_json(std::string_view text, std::string_view source) {
  const std::string where(source);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(where + ": " + e.what());
  }
  auto field = [&](const json& obj, const char* key) -> const json& {
    if (!obj.is_object() || !obj.contains(key)) {
      throw FormatError(where + ": field '" + key + "' missing");
    }
    return obj.at(key);
  };
  BundleConfig c;
  try {
    c.format_version = field(doc, "format_version").get<int>();
    if (c.format_version != kBundleFormatVersion) {
      throw FormatError(where + ": unsupported format_version " +
                        std::to_string(c.format_version) + " (expected " +
                        std::to_string(kBundleFormatVersion) + ")");
    }
    c.mode = search_mode_from_string(field(doc, "mode").get<std::string>());
    c.sample_cap = field(doc, "sample_cap").get<std::uint64_t>();
    c.inverted_row_cap = field(doc, "inverted_row_cap").get<std::uint64_t>();
    c.num_perm = field(doc, "num_perm").get<std::size_t>();
    c.seed = field(doc, "seed").get<std::uint64_t>();
    c.value_sentence_max = field(doc, "value_sentence_max").get<std::size_t>();
    c.summary_values = field(doc, "summary_values").get<std::size_t>();
    const json& e = field(doc, "embedder");
    c.embedder = provider_kind_from_string(field(e, "kind").get<std::string>());
    c.embedding_dim = field(e, "dim").get<std::size_t>();
    c.embedding_seed = field(e, "seed").get<std::uint64_t>();
  } catch (const json::exception& ex) {
    throw FormatError(where + ": " + ex.what());
  } catch (const ConfigError& ex) {
    throw FormatError(where + ": " + ex.what());
  }
  return c;
}

void persist_bundle(const IndexBundle& bundle, const fs::path& dir) {
  fs::create_directories(dir);
  write_text(dir / "config.json", config_to_json(bundle.config, 2));
  save_catalog(bundle.catalog, dir / "catalog.json");
  if (bundle.inverted) {
    write_inverted(*bundle.inverted, dir / "inverted.bin");
  } else {
    fs::remove(dir / "inverted.bin");
  }
  write_minhash(bundle.minhash, dir / "minhash.bin");
  write_embeddings(bundle.meta_index, dir / "meta_embeddings.bin");
  write_embeddings(bundle.value_index, dir / "value_embeddings.bin");
}

IndexBundle load_bundle(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw FormatError("not a bundle directory: " + dir.string());
  IndexBundle bundle;
  bundle.config = config_from_json(read_text(dir / "config.json"));
  bundle.catalog = load_catalog(dir / "catalog.json");
  if (fs::exists(dir / "inverted.bin")) bundle.inverted = read_inverted(dir / "inverted.bin");
  if (bundle.config.mode == SearchMode::Exact && !bundle.inverted) {
    throw FormatError("inverted.bin: required by an exact-mode bundle but missing");
  }
  bundle.minhash = read_minhash(dir / "minhash.bin");
  if (bundle.minhash.num_perm != bundle.config.num_perm) {
    throw FormatError("minhash.bin: field 'num_perm' disagrees with config.json");
  }
  bundle.meta_index = read_embeddings(dir / "meta_embeddings.bin", EmbeddingKind::MetadataSentence);
  bundle.value_index = read_embeddings(dir / "value_embeddings.bin", EmbeddingKind::ValueSentence);
  for (const auto* idx : {&bundle.meta_index, &bundle.value_index}) {
    if (idx->dim != bundle.config.embedding_dim) {
      throw FormatError("embeddings: field 'dim' disagrees with config.json");
    }
  }
  return bundle;
}

}  // namespace joinrank
