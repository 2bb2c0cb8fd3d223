/*
 * Copyright (C) 2026 The BenchForge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "benchforge/retrieval/embedding.h"

#include <cmath>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "benchforge/error.h"
#include "benchforge/sql/lexer.h"

namespace benchforge::retrieval {
namespace {

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

EmbeddingVector Normalize(std::vector<double> values) {
  double sq = 0.0;
  for (double v : values) sq += v * v;
  EmbeddingVector out;
  if (sq == 0.0) {
    out.values = std::move(values);
    out.empty = true;
    return out;
  }
  double inv = 1.0 / std::sqrt(sq);
  for (double& v : values) v *= inv;
  out.values = std::move(values);
  return out;
}

double Cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.values.size() != b.values.size())
    throw Error(ErrorCode::kInvalidArgument, "embedding dimensions differ");
  if (a.empty || b.empty) return 0.0;
  double dot = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) dot += a.values[i] * b.values[i];
  return dot;
}

HashTrigramEmbedder::HashTrigramEmbedder(size_t dimension) : dimension_(dimension) {
  if (dimension_ == 0)
    throw Error(ErrorCode::kInvalidArgument, "embedding dimension must be positive");
}

std::string HashTrigramEmbedder::id() const {
  return "hash-trigram-" + std::to_string(dimension_);
}

EmbeddingVector HashTrigramEmbedder::Embed(std::string_view text) {
  std::vector<double> tf(dimension_, 0.0);
  std::string lower = sql::ToLower(text);
  if (lower.size() < 3) {
    if (!lower.empty()) tf[Fnv1a(lower) % dimension_] += 1.0;
  } else {
    for (size_t i = 0; i + 3 <= lower.size(); ++i)
      tf[Fnv1a(std::string_view(lower).substr(i, 3)) % dimension_] += 1.0;
  }
  return Normalize(std::move(tf));
}

RemoteEmbedder::RemoteEmbedder(std::string url, std::string token, size_t dimension,
                               std::shared_ptr<net::HttpTransport> transport)
    : url_(std::move(url)),
      token_(std::move(token)),
      dimension_(dimension),
      transport_(transport ? std::move(transport) : net::MakeHttpTransport()) {}

EmbeddingVector RemoteEmbedder::Embed(std::string_view text) {
  net::HttpRequest req;
  req.url = url_;
  req.body = nlohmann::json{{"input", std::string(text)}}.dump();
  if (!token_.empty()) req.headers.emplace_back("Authorization", "Bearer " + token_);
  net::HttpResponse resp = transport_->Post(req);
  if (resp.status == 0)
    throw Error(ErrorCode::kEmbedderUnavailable, "embedder unreachable: " + resp.error);
  if (resp.status < 200 || resp.status >= 300)
    throw Error(ErrorCode::kEmbedderUnavailable,
                "embedder returned HTTP " + std::to_string(resp.status));
  std::vector<double> values;
  try {
    values = nlohmann::json::parse(resp.body).at("embedding").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kEmbedderUnavailable,
                std::string("malformed embedder response: ") + e.what());
  }
  if (values.size() != dimension_) {
    throw Error(ErrorCode::kEmbedderUnavailable,
                "embedder returned " + std::to_string(values.size()) +
                    " dimensions, expected " + std::to_string(dimension_));
  }
  return Normalize(std::move(values));
}

FallbackEmbedder::FallbackEmbedder(std::unique_ptr<Embedder> primary,
                                   FallbackHook on_fallback)
    : primary_(std::move(primary)),
      fallback_(primary_->dimension()),
      on_fallback_(std::move(on_fallback)) {}

EmbeddingVector FallbackEmbedder::Embed(std::string_view text) {
  try {
    return primary_->Embed(text);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmbedderUnavailable) throw;
    ++fallbacks_;
    if (on_fallback_) on_fallback_(e.what());
    return fallback_.Embed(text);
  }
}

}  // namespace benchforge::retrieval
