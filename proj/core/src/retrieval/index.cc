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
#include "benchforge/retrieval/index.h"

#include <algorithm>
#include <mutex>

#include "benchforge/error.h"

namespace benchforge::retrieval {

VectorIndex::VectorIndex(size_t dimension) : dimension_(dimension) {}

uint64_t VectorIndex::Add(std::string entry_id, EntryKind kind, std::string text,
                          std::variant<ExamplePair, sql::TableDef> payload,
                          EmbeddingVector vector) {
  if (vector.dimension() != dimension_) {
    throw Error(ErrorCode::kInvalidArgument,
                "vector has dimension " + std::to_string(vector.dimension()) +
                    ", index expects " + std::to_string(dimension_));
  }
  std::unique_lock lock(mu_);
  if (by_id_.count(entry_id))
    throw Error(ErrorCode::kDuplicateName, "duplicate entry id " + entry_id);
  RetrievalEntry e;
  e.entry_id = std::move(entry_id);
  e.kind = kind;
  e.text = std::move(text);
  e.payload = std::move(payload);
  e.vector = std::move(vector);
  e.insertion_seq = next_seq_++;
  by_id_[e.entry_id] = entries_.size();
  entries_.push_back(std::move(e));
  return entries_.back().insertion_seq;
}

bool VectorIndex::Remove(const std::string& entry_id) {
  std::unique_lock lock(mu_);
  auto it = by_id_.find(entry_id);
  if (it == by_id_.end()) return false;
  entries_.erase(entries_.begin() + static_cast<long>(it->second));
  by_id_.clear();
  for (size_t i = 0; i < entries_.size(); ++i) by_id_[entries_[i].entry_id] = i;
  return true;
}

bool VectorIndex::Contains(const std::string& entry_id) const {
  std::shared_lock lock(mu_);
  return by_id_.count(entry_id) > 0;
}

size_t VectorIndex::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

size_t VectorIndex::size(EntryKind kind) const {
  std::shared_lock lock(mu_);
  return static_cast<size_t>(std::count_if(
      entries_.begin(), entries_.end(),
      [&](const RetrievalEntry& e) { return e.kind == kind; }));
}

std::vector<ScoredEntry> VectorIndex::TopK(const EmbeddingVector& query, size_t k,
                                           std::optional<EntryKind> kind) const {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  if (query.dimension() != dimension_)
    throw Error(ErrorCode::kInvalidArgument, "query dimension mismatch");

  std::shared_lock lock(mu_);
  // (score, position); entries_ is in insertion order, so position order is
  // insertion_seq order.
  std::vector<std::pair<double, size_t>> scored;
  scored.reserve(entries_.size());
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (kind && entries_[i].kind != *kind) continue;
    scored.emplace_back(query.empty ? 0.0 : Cosine(query, entries_[i].vector), i);
  }
  auto better = [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  };
  size_t n = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<long>(n),
                    scored.end(), better);
  std::vector<ScoredEntry> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i)
    out.push_back({entries_[scored[i].second], scored[i].first});
  return out;
}

}  // namespace benchforge::retrieval
