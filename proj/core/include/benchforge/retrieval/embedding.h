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
#ifndef BENCHFORGE_RETRIEVAL_EMBEDDING_H_
#define BENCHFORGE_RETRIEVAL_EMBEDDING_H_

#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "benchforge/net/http.h"

namespace benchforge::retrieval {

// L2-normalized embedding. The all-zero vector (empty text) is flagged
// |empty| instead.
struct EmbeddingVector {
  std::vector<double> values;
  bool empty = false;

  size_t dimension() const { return values.size(); }
  bool operator==(const EmbeddingVector&) const = default;
};

// Scales |values| to unit L2 norm; a zero vector is returned flagged empty.
EmbeddingVector Normalize(std::vector<double> values);

// Dot product of two normalized vectors. Dimensions must agree.
double Cosine(const EmbeddingVector& a, const EmbeddingVector& b);

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual EmbeddingVector Embed(std::string_view text) = 0;
  virtual size_t dimension() const = 0;
  // Stable identifier recorded with indexes ("hash-trigram-256", ...).
  virtual std::string id() const = 0;
};

// Lowercases the text, counts character trigrams (texts shorter than three
// characters count as one gram), hashes each gram with 64-bit FNV-1a into
// |dimension| buckets, and L2-normalizes the term frequencies.
class HashTrigramEmbedder : public Embedder {
 public:
  explicit HashTrigramEmbedder(size_t dimension = 256);

  EmbeddingVector Embed(std::string_view text) override;
  size_t dimension() const override { return dimension_; }
  std::string id() const override;

 private:
  size_t dimension_;
};

// POSTs {"input": text} to |url| and reads {"embedding": [...]}. Throws
// Error(kEmbedderUnavailable) on transport failure, non-2xx status, a
// malformed body or a dimension mismatch.
class RemoteEmbedder : public Embedder {
 public:
  RemoteEmbedder(std::string url, std::string token, size_t dimension,
                 std::shared_ptr<net::HttpTransport> transport = nullptr);

  EmbeddingVector Embed(std::string_view text) override;
  size_t dimension() const override { return dimension_; }
  std::string id() const override { return "remote:" + url_; }

 private:
  std::string url_;
  std::string token_;
  size_t dimension_;
  std::shared_ptr<net::HttpTransport> transport_;
};

// Tries |primary|; on EmbedderUnavailable embeds with a hash embedder of the
// same dimension and reports the event through |on_fallback|.
class FallbackEmbedder : public Embedder {
 public:
  using FallbackHook = std::function<void(const std::string& reason)>;

  FallbackEmbedder(std::unique_ptr<Embedder> primary, FallbackHook on_fallback = {});

  EmbeddingVector Embed(std::string_view text) override;
  size_t dimension() const override { return primary_->dimension(); }
  std::string id() const override { return primary_->id(); }
  size_t fallback_count() const { return fallbacks_.load(); }

 private:
  std::unique_ptr<Embedder> primary_;
  HashTrigramEmbedder fallback_;
  FallbackHook on_fallback_;
  std::atomic<size_t> fallbacks_{0};
};

}  // namespace benchforge::retrieval

#endif  // BENCHFORGE_RETRIEVAL_EMBEDDING_H_
