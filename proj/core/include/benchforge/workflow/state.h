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

#ifndef BENCHFORGE_WORKFLOW_STATE_H_
#define BENCHFORGE_WORKFLOW_STATE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "benchforge/evaluation/rubric.h"
#include "benchforge/sql/schema.h"
#include "benchforge/workflow/types.h"

namespace benchforge::workflow {

// Event types written to a project's log.
inline constexpr std::string_view kEvProjectCreated = "project_created";
inline constexpr std::string_view kEvSchemaIngested = "schema_ingested";
inline constexpr std::string_view kEvQueryIngested = "query_ingested";
inline constexpr std::string_view kEvLeaseAcquired = "lease_acquired";
inline constexpr std::string_view kEvLeaseReleased = "lease_released";
inline constexpr std::string_view kEvCandidatesGenerated = "candidates_generated";
inline constexpr std::string_view kEvFeedback = "feedback";
inline constexpr std::string_view kEvRubricOverride = "rubric_override";

// One line of events.jsonl.
//   project_created      {project}
//   schema_ingested      {catalog}
//   query_ingested       {query, item_id, accepted?: {text, provenance}}
//   lease_acquired       {item_id, expires_at}
//   lease_released       {item_id}
//   candidates_generated {target_id, candidates, discard_proposed}
//   feedback             {event, lease_expires_at}
//   rubric_override      {item_id, judgment}
struct LogEvent {
  int64_t seq = 0;
  std::string type;
  int64_t at = 0;     // unix seconds
  std::string time;   // ISO-8601 UTC form of |at|
  std::string actor;  // annotator id, empty for system events
  nlohmann::json data = nlohmann::json::object();
};

nlohmann::json ToJson(const LogEvent& e);
LogEvent LogEventFromJson(const nlohmann::json& j);
std::string IsoTime(int64_t unix_seconds);

struct ProjectState {
  Project project;
  std::optional<sql::SchemaCatalog> catalog;
  std::vector<QueryRecord> queries;
  std::vector<AnnotationItem> items;  // creation order
  std::map<std::string, evaluation::RubricJudgment> overrides;
  int64_t last_seq = 0;

  const AnnotationItem* FindItem(std::string_view item_id) const;
  const QueryRecord* FindQuery(std::string_view query_id) const;
  const QueryRecord* FindByNormalized(std::string_view normalized_sql) const;
  std::string NextQueryId() const;
  std::string NextItemId() const;

  bool operator==(const ProjectState& o) const {
    return project == o.project && catalog == o.catalog && queries == o.queries &&
           items == o.items && overrides == o.overrides && last_seq == o.last_seq;
  }

 private:
  friend void Apply(ProjectState& state, const LogEvent& event);
  std::map<std::string, size_t, std::less<>> item_index_;
  std::map<std::string, size_t, std::less<>> query_index_;
  std::map<std::string, size_t, std::less<>> normalized_index_;
};

// Validates |event| against |state| and applies it. On failure throws the
// error the originating command reports (kInvalidTransition, kLeaseMismatch,
// kUnknownCandidate, kNotFound, kInvalidArgument) and leaves |state| as it
// was. Events must arrive in seq order.
void Apply(ProjectState& state, const LogEvent& event);

ProjectState Replay(const std::vector<LogEvent>& events);

// Candidate id that the next appended candidate of |task| receives.
std::string NextCandidateId(const AnnotationTask& task);

// Target an annotator works on next within |item|: the first unaccepted
// sub-item, else the item itself.
std::string CurrentTarget(const AnnotationItem& item);

// Checks the item-level invariants; returns a description of the first
// violation or nullopt.
std::optional<std::string> CheckInvariants(const AnnotationItem& item);

}  // namespace benchforge::workflow

#endif  // BENCHFORGE_WORKFLOW_STATE_H_
