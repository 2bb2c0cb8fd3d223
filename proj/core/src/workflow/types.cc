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

#include "benchforge/workflow/types.h"

#include "benchforge/error.h"
#include "benchforge/sql/parser.h"

namespace benchforge::workflow {
namespace {

using nlohmann::json;

template <typename T>
std::optional<T> OptionalField(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<T>();
}

json TaskJson(const AnnotationTask& t) {
  json candidates = json::array();
  for (const auto& c : t.candidates) candidates.push_back(generation::ToJson(c));
  return {{"state", std::string(ItemStateName(t.state))},
          {"candidates", candidates},
          {"refinement_notes", t.refinement_notes},
          {"accepted_text", t.accepted_text},
          {"accepted_by", t.accepted_by},
          {"flag_reason", t.flag_reason}};
}

void TaskFromJson(const json& j, AnnotationTask& t) {
  auto state = ItemStateFromName(j.at("state").get<std::string>());
  if (!state) throw Error(ErrorCode::kInvalidArgument, "bad item state");
  t.state = *state;
  for (const auto& c : j.at("candidates")) t.candidates.push_back(generation::CandidateFromJson(c));
  t.refinement_notes = j.value("refinement_notes", std::vector<std::string>{});
  t.accepted_text = j.value("accepted_text", "");
  t.accepted_by = j.value("accepted_by", "");
  t.flag_reason = j.value("flag_reason", "");
}

}  // namespace

std::string_view DirectionName(Direction d) {
  return d == Direction::kSqlToNl ? "sql_to_nl" : "text_to_sql";
}

Direction DirectionFromName(std::string_view name) {
  if (name == "sql_to_nl") return Direction::kSqlToNl;
  if (name == "text_to_sql") return Direction::kTextToSql;
  throw Error(ErrorCode::kInvalidArgument, "unknown direction \"" + std::string(name) + "\"");
}

ProjectConfig ProjectConfigFromJson(const json& j) {
  ProjectConfig c;
  if (j.is_null()) return c;
  try {
    if (j.contains("params")) c.params = generation::GenerationParamsFromJson(j["params"]);
    c.template_id = j.value("template_id", c.template_id);
    c.merge_template_id = j.value("merge_template_id", c.merge_template_id);
    c.k_examples = j.value("k_examples", c.k_examples);
    c.k_tables = j.value("k_tables", c.k_tables);
    if (j.contains("example_embedding"))
      c.example_embedding =
          retrieval::ExampleEmbeddingFromName(j["example_embedding"].get<std::string>());
    c.lease_ttl_seconds = j.value("lease_ttl_seconds", c.lease_ttl_seconds);
    c.backend = j.value("backend", c.backend);
    if (j.contains("direction"))
      c.direction = DirectionFromName(j["direction"].get<std::string>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad project config: ") + e.what());
  }
  if (c.k_tables == 0)
    throw Error(ErrorCode::kInvalidArgument, "k_tables must be positive");
  if (c.lease_ttl_seconds <= 0)
    throw Error(ErrorCode::kInvalidArgument, "lease_ttl_seconds must be positive");
  return c;
}

json ToJson(const ProjectConfig& c) {
  return {{"params", generation::ToJson(c.params)},
          {"template_id", c.template_id},
          {"merge_template_id", c.merge_template_id},
          {"k_examples", c.k_examples},
          {"k_tables", c.k_tables},
          {"example_embedding", std::string(retrieval::ExampleEmbeddingName(c.example_embedding))},
          {"lease_ttl_seconds", c.lease_ttl_seconds},
          {"backend", c.backend},
          {"direction", std::string(DirectionName(c.direction))}};
}

json ToJson(const Project& p) {
  return {{"project_id", p.project_id},
          {"name", p.name},
          {"dialect", std::string(sql::DialectName(p.dialect))},
          {"schema_id", p.schema_id},
          {"config", ToJson(p.config)},
          {"created_at", p.created_at}};
}

Project ProjectFromJson(const json& j) {
  Project p;
  p.project_id = j.at("project_id").get<std::string>();
  p.name = j.at("name").get<std::string>();
  auto dialect = sql::DialectFromName(j.at("dialect").get<std::string>());
  if (!dialect) throw Error(ErrorCode::kInvalidArgument, "unknown dialect");
  p.dialect = *dialect;
  p.schema_id = j.value("schema_id", "");
  p.config = ProjectConfigFromJson(j.at("config"));
  p.created_at = j.value("created_at", "");
  return p;
}

json ToJson(const Provenance& p) {
  return {{"model_id", p.model_id},
          {"annotator_id", p.annotator_id},
          {"feedback_event_count", p.feedback_event_count}};
}

Provenance ProvenanceFromJson(const json& j) {
  Provenance p;
  p.model_id = j.value("model_id", "");
  p.annotator_id = j.value("annotator_id", "");
  p.feedback_event_count = j.value("feedback_event_count", int64_t{0});
  return p;
}

json ToJson(const QueryRecord& q) {
  json j = {{"query_id", q.query_id},
            {"raw_sql", q.raw_sql},
            {"normalized_sql", q.normalized_sql},
            {"source_tag", q.source_tag},
            {"is_nested", q.is_nested},
            {"whole_reason", q.whole_reason},
            {"db_id", q.db_id}};
  j["decomposition"] = q.decomposition ? sql::PlanToJson(*q.decomposition) : json(nullptr);
  j["reference_question"] = q.reference_question ? json(*q.reference_question) : json(nullptr);
  return j;
}

QueryRecord QueryRecordFromJson(const json& j, sql::Dialect dialect) {
  QueryRecord q;
  q.query_id = j.at("query_id").get<std::string>();
  q.raw_sql = j.at("raw_sql").get<std::string>();
  q.normalized_sql = j.at("normalized_sql").get<std::string>();
  q.source_tag = j.value("source_tag", "");
  q.is_nested = j.value("is_nested", false);
  q.whole_reason = j.value("whole_reason", "");
  q.db_id = j.value("db_id", "");
  if (j.contains("decomposition") && !j["decomposition"].is_null())
    q.decomposition = sql::PlanFromJson(j["decomposition"], dialect);
  q.reference_question = OptionalField<std::string>(j, "reference_question");
  return q;
}

std::string_view ItemStateName(ItemState s) {
  switch (s) {
    case ItemState::kPending: return "pending";
    case ItemState::kDrafted: return "drafted";
    case ItemState::kInReview: return "in_review";
    case ItemState::kAccepted: return "accepted";
    case ItemState::kDiscarded: return "discarded";
  }
  return "pending";
}

std::optional<ItemState> ItemStateFromName(std::string_view name) {
  for (ItemState s : {ItemState::kPending, ItemState::kDrafted, ItemState::kInReview,
                      ItemState::kAccepted, ItemState::kDiscarded}) {
    if (ItemStateName(s) == name) return s;
  }
  return std::nullopt;
}

bool IsLegalTransition(ItemState from, ItemState to) {
  switch (from) {
    case ItemState::kPending: return to == ItemState::kDrafted;
    case ItemState::kDrafted: return to == ItemState::kInReview;
    case ItemState::kInReview: return to == ItemState::kAccepted || to == ItemState::kDiscarded;
    case ItemState::kAccepted: return to == ItemState::kInReview;
    case ItemState::kDiscarded: return false;
  }
  return false;
}

std::string_view FeedbackKindName(FeedbackKind k) {
  switch (k) {
    case FeedbackKind::kRank: return "rank";
    case FeedbackKind::kEdit: return "edit";
    case FeedbackKind::kDiscard: return "discard";
    case FeedbackKind::kRefine: return "refine";
    case FeedbackKind::kAccept: return "accept";
    case FeedbackKind::kReopen: return "reopen";
    case FeedbackKind::kFlag: return "flag";
  }
  return "rank";
}

std::optional<FeedbackKind> FeedbackKindFromName(std::string_view name) {
  for (FeedbackKind k : {FeedbackKind::kRank, FeedbackKind::kEdit, FeedbackKind::kDiscard,
                         FeedbackKind::kRefine, FeedbackKind::kAccept, FeedbackKind::kReopen,
                         FeedbackKind::kFlag}) {
    if (FeedbackKindName(k) == name) return k;
  }
  return std::nullopt;
}

json ToJson(const FeedbackEvent& e) {
  return {{"event_id", e.event_id},
          {"annotator_id", e.annotator_id},
          {"kind", std::string(FeedbackKindName(e.kind))},
          {"target_id", e.target_id},
          {"payload", e.payload},
          {"timestamp", e.timestamp}};
}

FeedbackEvent FeedbackEventFromJson(const json& j) {
  FeedbackEvent e;
  e.event_id = j.value("event_id", "");
  e.annotator_id = j.at("annotator_id").get<std::string>();
  auto kind = FeedbackKindFromName(j.at("kind").get<std::string>());
  if (!kind) throw Error(ErrorCode::kInvalidArgument, "unknown feedback kind");
  e.kind = *kind;
  e.target_id = j.at("target_id").get<std::string>();
  e.payload = j.value("payload", json::object());
  e.timestamp = j.value("timestamp", "");
  return e;
}

const generation::Candidate* AnnotationTask::FindCandidate(std::string_view id) const {
  for (const auto& c : candidates) {
    if (c.candidate_id == id) return &c;
  }
  return nullptr;
}

generation::Candidate* AnnotationTask::FindCandidate(std::string_view id) {
  return const_cast<generation::Candidate*>(std::as_const(*this).FindCandidate(id));
}

const generation::Candidate* AnnotationTask::AcceptedCandidate() const {
  for (const auto& c : candidates) {
    if (c.status == generation::CandidateStatus::kAccepted) return &c;
  }
  return nullptr;
}

const AnnotationTask* AnnotationItem::FindTask(std::string_view target_id) const {
  if (target_id == item_id) return this;
  for (const auto& sub : sub_items) {
    if (sub.sub_item_id == target_id) return &sub;
  }
  return nullptr;
}

AnnotationTask* AnnotationItem::FindTask(std::string_view target_id) {
  return const_cast<AnnotationTask*>(std::as_const(*this).FindTask(target_id));
}

json ToJson(const AnnotationItem& item) {
  json j = TaskJson(item);
  j["item_id"] = item.item_id;
  j["query_id"] = item.query_id;
  j["created_at"] = item.created_at;
  json subs = json::array();
  for (const auto& s : item.sub_items) {
    json sj = TaskJson(s);
    sj["sub_item_id"] = s.sub_item_id;
    sj["part"] = s.part;
    sj["sql"] = s.sql;
    subs.push_back(std::move(sj));
  }
  j["sub_items"] = subs;
  json log = json::array();
  for (const auto& e : item.feedback_log) log.push_back(ToJson(e));
  j["feedback_log"] = log;
  j["lease"] = item.lease ? json{{"annotator_id", item.lease->annotator_id},
                                 {"expires_at", item.lease->expires_at}}
                          : json(nullptr);
  j["imported"] = item.imported ? ToJson(*item.imported) : json(nullptr);
  return j;
}

AnnotationItem AnnotationItemFromJson(const json& j) {
  AnnotationItem item;
  try {
    TaskFromJson(j, item);
    item.item_id = j.at("item_id").get<std::string>();
    item.query_id = j.at("query_id").get<std::string>();
    item.created_at = j.value("created_at", "");
    for (const auto& sj : j.at("sub_items")) {
      SubItem s;
      TaskFromJson(sj, s);
      s.sub_item_id = sj.at("sub_item_id").get<std::string>();
      s.part = sj.at("part").get<std::string>();
      s.sql = sj.at("sql").get<std::string>();
      item.sub_items.push_back(std::move(s));
    }
    for (const auto& e : j.at("feedback_log")) item.feedback_log.push_back(FeedbackEventFromJson(e));
    if (j.contains("lease") && !j["lease"].is_null())
      item.lease = Lease{j["lease"].at("annotator_id").get<std::string>(),
                         j["lease"].at("expires_at").get<int64_t>()};
    if (j.contains("imported") && !j["imported"].is_null())
      item.imported = ProvenanceFromJson(j["imported"]);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad item: ") + e.what());
  }
  return item;
}

std::string ItemIdOf(std::string_view target_id) {
  size_t dot = target_id.find('.');
  return std::string(target_id.substr(0, dot));
}

}  // namespace benchforge::workflow
