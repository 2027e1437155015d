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

#include <future>

#include <httplib.h>
#include <json.hpp>

#include "joinrank/embedder.hpp"
#include "joinrank/error.hpp"

namespace joinrank {

using json = nlohmann::json;

namespace {

void split_endpoint(const std::string& endpoint, std::string& host, std::string& prefix) {
  auto scheme = endpoint.find("://");
  auto path_start = endpoint.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  host = endpoint.substr(0, path_start);
  prefix = path_start == std::string::npos ? "" : endpoint.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
}

httplib::Client make_client(const std::string& host,
                            std::chrono::milliseconds timeout) {
  httplib::Client client(host);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  return client;
}

std::string error_body(const httplib::Result& res) {
  try {
    auto doc = json::parse(res->body);
    if (doc.is_object() && doc.contains("error") && doc["error"].is_string()) {
      return doc["error"].get<std::string>();
    }
  } catch (const json::exception&) {
  }
  return res->body.substr(0, 200);
}

}  // namespace

RemoteEmbedder::RemoteEmbedder(EmbeddingProviderConfig config)
    : config_(std::move(config)) {
  config_.kind = ProviderKind::Remote;
  config_.validate();
  split_endpoint(*config_.endpoint, host_, prefix_);
}

std::size_t RemoteEmbedder::health() const {
  auto client = make_client(host_, config_.timeout);
  auto res = client.Get(prefix_ + "/health");
  if (!res) {
    throw ProviderError("embedding service " + *config_.endpoint +
                        " unreachable: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ProviderError("embedding service " + *config_.endpoint +
                        " /health returned status " + std::to_string(res->status));
  }
  try {
    auto doc = json::parse(res->body);
    return doc.at("dim").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ProtocolError("embedding service " + *config_.endpoint +
                        " /health: malformed response: " + e.what());
  }
}

std::vector<EmbeddingVector> RemoteEmbedder::embed_batch(
    std::span<const std::string> texts, std::size_t batch_index) const {
  const std::string where = "embedding service " + *config_.endpoint + " (batch " +
                            std::to_string(batch_index) + ")";
  json request{{"texts", json::array()}};
  for (const auto& t : texts) request["texts"].push_back(t);
  const std::string body = request.dump();

  httplib::Result res{nullptr, httplib::Error::Unknown};
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto client = make_client(host_, config_.timeout);
    res = client.Post(prefix_ + "/embed", body, "application/json");
    if (res && res->status < 500) break;
  }
  if (!res) {
    throw ProviderError(where + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ProviderError(where + " returned status " + std::to_string(res->status) +
                        ": " + error_body(res));
  }

  json doc;
  try {
    doc = json::parse(res->body);
  } catch (const json::exception& e) {
    throw ProtocolError(where + ": response is not JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc["dim"].is_number_unsigned() ||
      !doc.contains("vectors") || !doc["vectors"].is_array()) {
    throw ProtocolError(where + ": response lacks 'dim' or 'vectors'");
  }
  const auto dim = doc["dim"].get<std::size_t>();
  if (dim != config_.dim) {
    throw ProtocolError(where + ": dimension mismatch, service dim " +
                        std::to_string(dim) + ", configured " +
                        std::to_string(config_.dim));
  }
  const auto& vectors = doc["vectors"];
  if (vectors.size() != texts.size()) {
    throw ProtocolError(where + ": expected " + std::to_string(texts.size()) +
                        " vectors, got " + std::to_string(vectors.size()));
  }

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto& v = vectors[i];
    if (!v.is_array() || v.size() != dim) {
      throw ProtocolError(where + ": vector " + std::to_string(i) +
                          " does not have dim " + std::to_string(dim));
    }
    EmbeddingVector e;
    e.values.reserve(dim);
    for (const auto& x : v) {
      if (!x.is_number()) {
        throw ProtocolError(where + ": vector " + std::to_string(i) +
                            " holds a non-numeric entry");
      }
      e.values.push_back(x.get<double>());
    }
    if (texts[i].empty()) {
      e.values.assign(dim, 0.0);
    } else {
      normalize_l2(e);
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<EmbeddingVector> RemoteEmbedder::embed(std::span<const std::string> texts) {
  const std::size_t batch = config_.batch_size;
  const std::size_t batches = (texts.size() + batch - 1) / batch;
  std::vector<std::vector<EmbeddingVector>> results(batches);

  for (std::size_t wave = 0; wave < batches; wave += config_.max_in_flight) {
    std::vector<std::future<std::vector<EmbeddingVector>>> pending;
    const std::size_t end = std::min(batches, wave + config_.max_in_flight);
    for (std::size_t b = wave; b < end; ++b) {
      auto slice = texts.subspan(b * batch, std::min(batch, texts.size() - b * batch));
      pending.push_back(std::async(std::launch::async, [this, slice, b] {
        return embed_batch(slice, b);
      }));
    }
    for (std::size_t b = wave; b < end; ++b) results[b] = pending[b - wave].get();
  }

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (auto& r : results) {
    for (auto& v : r) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace joinrank
