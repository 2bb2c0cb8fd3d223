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
#ifndef BENCHFORGE_RETRIEVAL_INDEX_H_
#define BENCHFORGE_RETRIEVAL_INDEX_H_

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "benchforge/retrieval/embedding.h"
#include "benchforge/sql/schema.h"

namespace benchforge::retrieval {

enum class EntryKind { kExample, kTableSignature };

// An accepted annotation usable as a few-shot example.
struct ExamplePair {
  std::string sql;
  std::string nl;
  std::string item_id;

  bool operator==(const ExamplePair&) const = default;
};

struct RetrievalEntry {
  std::string entry_id;
  EntryKind kind = EntryKind::kExample;
  std::string text;  // the embedded string
  std::variant<ExamplePair, sql::TableDef> payload;
  EmbeddingVector vector;
  uint64_t insertion_seq = 0;
};

struct ScoredEntry {
  RetrievalEntry entry;
  double score = 0.0;
};

// Exact cosine top-k over a linear scan. Readers run concurrently; Add and
// Remove take an exclusive lock, so a reader never sees a partial entry.
class VectorIndex {
 public:
  explicit VectorIndex(size_t dimension = 256);

  VectorIndex(const VectorIndex&) = delete;
  VectorIndex& operator=(const VectorIndex&) = delete;

  size_t dimension() const { return dimension_; }

  // Assigns the next insertion_seq and returns it. Throws
  // Error(kDuplicateName) for a taken entry_id and Error(kInvalidArgument)
  // on a dimension mismatch.
  uint64_t Add(std::string entry_id, EntryKind kind, std::string text,
               std::variant<ExamplePair, sql::TableDef> payload,
               EmbeddingVector vector);

  // Returns false when no such entry exists.
  bool Remove(const std::string& entry_id);

  bool Contains(const std::string& entry_id) const;
  size_t size() const;
  size_t size(EntryKind kind) const;

  // Entries ordered by cosine similarity, descending, ties broken by
  // ascending insertion_seq; at most k results. An empty (zero) query
  // returns the k oldest matching entries with score 0.
  std::vector<ScoredEntry> TopK(const EmbeddingVector& query, size_t k,
                                std::optional<EntryKind> kind = std::nullopt) const;

 private:
  size_t dimension_;
  mutable std::shared_mutex mu_;
  std::vector<RetrievalEntry> entries_;  // insertion order
  std::unordered_map<std::string, size_t> by_id_;
  uint64_t next_seq_ = 1;
};

}  // namespace benchforge::retrieval

#endif  // BENCHFORGE_RETRIEVAL_INDEX_H_
