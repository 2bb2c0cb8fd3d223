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

#ifndef BENCHFORGE_WORKFLOW_TYPES_H_
#define BENCHFORGE_WORKFLOW_TYPES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "benchforge/generation/backend.h"
#include "benchforge/generation/candidate.h"
#include "benchforge/retrieval/retrieve.h"
#include "benchforge/sql/ast.h"
#include "benchforge/sql/decompose.h"

namespace benchforge::workflow {

enum class Direction { kSqlToNl, kTextToSql };

std::string_view DirectionName(Direction d);
Direction DirectionFromName(std::string_view name);

struct ProjectConfig {
  generation::GenerationParams params;
  std::string template_id = "describe/v1";
  std::string merge_template_id = "merge/v1";
  size_t k_examples = 3;
  size_t k_tables = 5;
  retrieval::ExampleEmbedding example_embedding = retrieval::ExampleEmbedding::kSql;
  int64_t lease_ttl_seconds = 30 * 60;
  std::string backend = "mock";  // "mock" or "remote"
  Direction direction = Direction::kSqlToNl;

  bool operator==(const ProjectConfig&) const = default;
};

// Missing keys keep their defaults. Throws Error(kInvalidArgument).
ProjectConfig ProjectConfigFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const ProjectConfig& c);

struct Project {
  std::string project_id;  // equals the name
  std::string name;
  sql::Dialect dialect = sql::Dialect::kGeneric;
  std::string schema_id;  // empty until a schema is ingested
  ProjectConfig config;
  std::string created_at;

  bool operator==(const Project&) const = default;
};

nlohmann::json ToJson(const Project& p);
Project ProjectFromJson(const nlohmann::json& j);

// Export provenance, also carried by imported reference answers.
struct Provenance {
  std::string model_id;
  std::string annotator_id;
  int64_t feedback_event_count = 0;

  bool operator==(const Provenance&) const = default;
};

nlohmann::json ToJson(const Provenance& p);
Provenance ProvenanceFromJson(const nlohmann::json& j);

struct QueryRecord {
  std::string query_id;
  std::string raw_sql;
  std::string normalized_sql;  // canonical rendering, unique per project
  std::string source_tag;
  bool is_nested = false;
  std::optional<sql::DecompositionPlan> decomposition;
  // Why a nested query is annotated whole (correlated, unsupported).
  std::string whole_reason;
  std::optional<std::string> reference_question;
  std::string db_id;  // from benchmark input, else empty

  bool operator==(const QueryRecord&) const = default;
};

nlohmann::json ToJson(const QueryRecord& q);
QueryRecord QueryRecordFromJson(const nlohmann::json& j, sql::Dialect dialect);

enum class ItemState { kPending, kDrafted, kInReview, kAccepted, kDiscarded };

std::string_view ItemStateName(ItemState s);
std::optional<ItemState> ItemStateFromName(std::string_view name);

// The only legal moves: pending->drafted->in_review->{accepted, discarded}
// plus accepted->in_review (reopen).
bool IsLegalTransition(ItemState from, ItemState to);

enum class FeedbackKind { kRank, kEdit, kDiscard, kRefine, kAccept, kReopen, kFlag };

std::string_view FeedbackKindName(FeedbackKind k);
std::optional<FeedbackKind> FeedbackKindFromName(std::string_view name);

struct FeedbackEvent {
  std::string event_id;
  std::string annotator_id;
  FeedbackKind kind = FeedbackKind::kRank;
  std::string target_id;  // item or sub-item id
  // rank: {"order": [cid...]}; edit: {"candidate_id"?, "text", "new_candidate_id"};
  // discard: {"candidate_id"?}; refine: {"note"}; flag: {"reason"};
  // accept: {"candidate_id", "final_text"}; reopen: {}.
  nlohmann::json payload = nlohmann::json::object();
  std::string timestamp;

  bool operator==(const FeedbackEvent&) const = default;
};

nlohmann::json ToJson(const FeedbackEvent& e);
FeedbackEvent FeedbackEventFromJson(const nlohmann::json& j);

struct Lease {
  std::string annotator_id;
  int64_t expires_at = 0;  // unix seconds

  bool operator==(const Lease&) const = default;
};

// What items and sub-items share: the annotation unit itself.
struct AnnotationTask {
  ItemState state = ItemState::kPending;
  std::vector<generation::Candidate> candidates;
  std::vector<std::string> refinement_notes;
  std::string accepted_text;
  std::string accepted_by;
  std::string flag_reason;

  const generation::Candidate* FindCandidate(std::string_view id) const;
  generation::Candidate* FindCandidate(std::string_view id);
  const generation::Candidate* AcceptedCandidate() const;

  bool operator==(const AnnotationTask&) const = default;
};

// One decomposition step, or the final query, of a nested item. Its id is
// "<item_id>.<part>".
struct SubItem : AnnotationTask {
  std::string sub_item_id;
  std::string part;  // step_k or "final"
  std::string sql;

  bool operator==(const SubItem&) const = default;
};

struct AnnotationItem : AnnotationTask {
  std::string item_id;
  std::string query_id;
  std::vector<SubItem> sub_items;
  std::vector<FeedbackEvent> feedback_log;
  std::optional<Lease> lease;
  std::optional<Provenance> imported;  // reference accepted at ingestion
  std::string created_at;

  bool nested() const { return !sub_items.empty(); }
  bool HasLiveLease(int64_t now) const { return lease && lease->expires_at > now; }
  // The item itself for its own id, a sub-item for "<item_id>.<part>".
  const AnnotationTask* FindTask(std::string_view target_id) const;
  AnnotationTask* FindTask(std::string_view target_id);

  bool operator==(const AnnotationItem&) const = default;
};

nlohmann::json ToJson(const AnnotationItem& item);
AnnotationItem AnnotationItemFromJson(const nlohmann::json& j);

// Splits "<item_id>.<part>" into its item id; returns the id unchanged
// otherwise.
std::string ItemIdOf(std::string_view target_id);

}  // namespace benchforge::workflow

#endif  // BENCHFORGE_WORKFLOW_TYPES_H_
