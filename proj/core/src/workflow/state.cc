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

#include "benchforge/workflow/state.h"

#include <cstdio>
#include <ctime>
#include <set>
#include <utility>

#include "benchforge/error.h"
#include "benchforge/sql/render.h"

namespace benchforge::workflow {
namespace {

using generation::Candidate;
using generation::CandidateOrigin;
using generation::CandidateStatus;
using nlohmann::json;

[[noreturn]] void Fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

bool Blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

std::string StringField(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string())
    Fail(ErrorCode::kInvalidArgument, std::string("missing string field \"") + key + "\"");
  return j[key].get<std::string>();
}

std::optional<std::string> OptionalString(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_string())
    Fail(ErrorCode::kInvalidArgument, std::string("field \"") + key + "\" must be a string");
  return j[key].get<std::string>();
}

void Move(AnnotationTask& task, ItemState to, std::string_view id) {
  if (task.state == to) return;
  if (!IsLegalTransition(task.state, to))
    Fail(ErrorCode::kInvalidTransition,
         std::string(id) + ": " + std::string(ItemStateName(task.state)) + " -> " +
             std::string(ItemStateName(to)));
}

// Feedback on a drafted task puts it under review first.
void Touch(AnnotationTask& task, std::string_view id) {
  if (task.state == ItemState::kDrafted) {
    task.state = ItemState::kInReview;
    return;
  }
  if (task.state != ItemState::kInReview)
    Fail(ErrorCode::kInvalidTransition,
         std::string(id) + " is " + std::string(ItemStateName(task.state)));
}

void SetState(AnnotationTask& task, ItemState to, std::string_view id) {
  Move(task, to, id);
  task.state = to;
}

Candidate& LiveCandidate(AnnotationTask& task, const std::string& id) {
  Candidate* c = task.FindCandidate(id);
  if (!c || c->status == CandidateStatus::kDiscarded)
    Fail(ErrorCode::kUnknownCandidate, "unknown or discarded candidate \"" + id + "\"");
  return *c;
}

bool AllSubsAccepted(const AnnotationItem& item) {
  for (const auto& s : item.sub_items) {
    if (s.state != ItemState::kAccepted) return false;
  }
  return true;
}

void RequireLease(const AnnotationItem& item, const std::string& annotator, int64_t now) {
  if (annotator.empty()) Fail(ErrorCode::kLeaseMismatch, "annotator id required");
  if (!item.HasLiveLease(now) || item.lease->annotator_id != annotator)
    Fail(ErrorCode::kLeaseMismatch, item.item_id + " is not leased by " + annotator);
}

AnnotationItem BuildItem(const QueryRecord& q, const std::string& item_id, const LogEvent& ev) {
  AnnotationItem item;
  item.item_id = item_id;
  item.query_id = q.query_id;
  item.created_at = ev.time;
  const json& accepted = ev.data.contains("accepted") ? ev.data["accepted"] : json(nullptr);
  if (!accepted.is_null()) {
    std::string text = StringField(accepted, "text");
    if (Blank(text)) Fail(ErrorCode::kInvalidArgument, "imported question is blank");
    Provenance prov = ProvenanceFromJson(accepted.value("provenance", json::object()));
    Candidate c;
    c.candidate_id = "c1";
    c.text = text;
    c.origin = CandidateOrigin::kAnnotatorEdited;
    c.model_id = prov.model_id;
    c.status = CandidateStatus::kAccepted;
    c.created_at = ev.time;
    item.candidates.push_back(std::move(c));
    item.state = ItemState::kAccepted;
    item.accepted_text = text;
    item.accepted_by = prov.annotator_id;
    item.imported = prov;
    return item;
  }
  if (q.decomposition) {
    for (const auto& step : q.decomposition->steps) {
      SubItem s;
      s.part = step.cte_name;
      s.sub_item_id = item_id + "." + s.part;
      s.sql = sql::RenderQuery(step.subquery);
      item.sub_items.push_back(std::move(s));
    }
    SubItem fin;
    fin.part = "final";
    fin.sub_item_id = item_id + ".final";
    fin.sql = sql::RenderQuery(q.decomposition->final);
    item.sub_items.push_back(std::move(fin));
  }
  return item;
}

void ApplyCandidates(AnnotationItem& item, const LogEvent& ev) {
  std::string target = StringField(ev.data, "target_id");
  AnnotationTask* task = item.FindTask(target);
  if (!task) Fail(ErrorCode::kNotFound, "unknown target \"" + target + "\"");
  RequireLease(item, ev.actor, ev.at);
  bool is_parent = task == &item;
  if (is_parent && !AllSubsAccepted(item))
    Fail(ErrorCode::kInvalidTransition, item.item_id + " has unaccepted sub-items");
  if (!is_parent && item.state != ItemState::kPending)
    Fail(ErrorCode::kInvalidTransition, item.item_id + " is already recomposed");
  if (task->state == ItemState::kPending) {
    SetState(*task, ItemState::kDrafted, target);
  } else if (task->state != ItemState::kDrafted && task->state != ItemState::kInReview) {
    Fail(ErrorCode::kInvalidTransition,
         target + " is " + std::string(ItemStateName(task->state)));
  }
  const json& list = ev.data.at("candidates");
  if (!list.is_array() || list.empty())
    Fail(ErrorCode::kInvalidArgument, "candidates_generated without candidates");
  if (ev.data.value("discard_proposed", false)) {
    for (auto& c : task->candidates) {
      if (c.status == CandidateStatus::kProposed) c.status = CandidateStatus::kDiscarded;
    }
  }
  for (const auto& cj : list) {
    Candidate c = generation::CandidateFromJson(cj);
    if (c.candidate_id != NextCandidateId(*task))
      Fail(ErrorCode::kInvalidArgument, "out of sequence candidate id " + c.candidate_id);
    if (Blank(c.text)) Fail(ErrorCode::kInvalidArgument, "blank candidate");
    c.status = CandidateStatus::kProposed;
    c.rank.reset();
    task->candidates.push_back(std::move(c));
  }
}

void ApplyFeedback(AnnotationItem& item, const LogEvent& ev) {
  FeedbackEvent fb = FeedbackEventFromJson(ev.data.at("event"));
  const std::string& who = fb.annotator_id;
  AnnotationTask* task = item.FindTask(fb.target_id);
  if (!task) Fail(ErrorCode::kNotFound, "unknown target \"" + fb.target_id + "\"");
  bool is_parent = task == &item;
  int64_t expires = ev.data.value("lease_expires_at", int64_t{0});
  const json& p = fb.payload;

  if (fb.kind == FeedbackKind::kReopen) {
    if (who.empty()) Fail(ErrorCode::kLeaseMismatch, "annotator id required");
    if (item.HasLiveLease(ev.at) && item.lease->annotator_id != who)
      Fail(ErrorCode::kLeaseMismatch, item.item_id + " is leased by another annotator");
    if (!is_parent && item.state != ItemState::kPending)
      Fail(ErrorCode::kInvalidTransition, item.item_id + " is already recomposed");
    SetState(*task, ItemState::kInReview, fb.target_id);
    for (auto& c : task->candidates) {
      if (c.status == CandidateStatus::kAccepted)
        c.status = c.origin == CandidateOrigin::kAnnotatorEdited ? CandidateStatus::kEdited
                                                                 : CandidateStatus::kProposed;
    }
    task->accepted_text.clear();
    task->accepted_by.clear();
    item.lease = Lease{who, expires > ev.at ? expires : ev.at + 1800};
    item.feedback_log.push_back(std::move(fb));
    return;
  }

  RequireLease(item, who, ev.at);
  if (!is_parent && item.state != ItemState::kPending)
    Fail(ErrorCode::kInvalidTransition, item.item_id + " is already recomposed");
  bool keeps_lease = true;

  switch (fb.kind) {
    case FeedbackKind::kRank: {
      if (!p.is_object() || !p.contains("order") || !p["order"].is_array() || p["order"].empty())
        Fail(ErrorCode::kInvalidArgument, "rank needs a non-empty order");
      Touch(*task, fb.target_id);
      std::set<std::string> seen;
      for (const auto& id : p["order"]) {
        if (!id.is_string()) Fail(ErrorCode::kInvalidArgument, "candidate ids are strings");
        if (!seen.insert(id.get<std::string>()).second)
          Fail(ErrorCode::kInvalidArgument, "duplicate candidate in order");
        LiveCandidate(*task, id.get<std::string>());
      }
      for (auto& c : task->candidates) c.rank.reset();
      int r = 1;
      for (const auto& id : p["order"]) task->FindCandidate(id.get<std::string>())->rank = r++;
      break;
    }
    case FeedbackKind::kEdit: {
      std::string text = StringField(p, "text");
      if (Blank(text)) Fail(ErrorCode::kInvalidArgument, "edit text is blank");
      Touch(*task, fb.target_id);
      Candidate c;
      if (auto src = OptionalString(p, "candidate_id")) {
        const Candidate& from = LiveCandidate(*task, *src);
        c.model_id = from.model_id;
        c.prompt_hash = from.prompt_hash;
      }
      c.candidate_id = StringField(p, "new_candidate_id");
      if (c.candidate_id != NextCandidateId(*task))
        Fail(ErrorCode::kInvalidArgument, "out of sequence candidate id " + c.candidate_id);
      c.text = text;
      c.origin = CandidateOrigin::kAnnotatorEdited;
      c.status = CandidateStatus::kEdited;
      c.created_at = fb.timestamp;
      task->candidates.push_back(std::move(c));
      break;
    }
    case FeedbackKind::kDiscard: {
      if (auto cid = OptionalString(p, "candidate_id")) {
        Touch(*task, fb.target_id);
        LiveCandidate(*task, *cid).status = CandidateStatus::kDiscarded;
      } else {
        if (!is_parent)
          Fail(ErrorCode::kInvalidTransition, "sub-items cannot be discarded as a whole");
        Touch(*task, fb.target_id);
        SetState(*task, ItemState::kDiscarded, fb.target_id);
        for (auto& c : task->candidates) {
          if (c.status == CandidateStatus::kProposed) c.status = CandidateStatus::kDiscarded;
        }
        keeps_lease = false;
      }
      break;
    }
    case FeedbackKind::kRefine: {
      std::string note = StringField(p, "note");
      if (Blank(note)) Fail(ErrorCode::kInvalidArgument, "refinement note is blank");
      Touch(*task, fb.target_id);
      task->refinement_notes.push_back(note);
      break;
    }
    case FeedbackKind::kFlag: {
      std::string reason = p.is_object() ? p.value("reason", "") : "";
      Touch(*task, fb.target_id);
      task->flag_reason = reason.empty() ? "flagged" : reason;
      break;
    }
    case FeedbackKind::kAccept: {
      std::string cid = StringField(p, "candidate_id");
      std::string text = StringField(p, "final_text");
      if (Blank(text)) Fail(ErrorCode::kInvalidArgument, "final text is blank");
      if (task->state != ItemState::kDrafted && task->state != ItemState::kInReview)
        Fail(ErrorCode::kInvalidTransition,
             fb.target_id + " is " + std::string(ItemStateName(task->state)));
      Candidate& c = LiveCandidate(*task, cid);
      if (c.text != text)
        Fail(ErrorCode::kInvalidArgument, "final text differs from the candidate; edit first");
      Touch(*task, fb.target_id);
      SetState(*task, ItemState::kAccepted, fb.target_id);
      c.status = CandidateStatus::kAccepted;
      task->accepted_text = text;
      task->accepted_by = who;
      keeps_lease = false;
      break;
    }
    case FeedbackKind::kReopen:
      break;
  }

  if (!keeps_lease) {
    item.lease.reset();
  } else if (expires > item.lease->expires_at) {
    item.lease->expires_at = expires;
  }
  item.feedback_log.push_back(std::move(fb));
}

}  // namespace

json ToJson(const LogEvent& e) {
  return {{"seq", e.seq}, {"type", e.type}, {"at", e.at},
          {"time", e.time}, {"actor", e.actor}, {"data", e.data}};
}

LogEvent LogEventFromJson(const json& j) {
  LogEvent e;
  try {
    e.seq = j.at("seq").get<int64_t>();
    e.type = j.at("type").get<std::string>();
    e.at = j.at("at").get<int64_t>();
    e.time = j.value("time", IsoTime(e.at));
    e.actor = j.value("actor", "");
    e.data = j.value("data", json::object());
  } catch (const json::exception& ex) {
    Fail(ErrorCode::kInvalidArgument, std::string("bad log event: ") + ex.what());
  }
  return e;
}

std::string IsoTime(int64_t unix_seconds) {
  std::time_t t = static_cast<std::time_t>(unix_seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const AnnotationItem* ProjectState::FindItem(std::string_view item_id) const {
  auto it = item_index_.find(item_id);
  return it == item_index_.end() ? nullptr : &items[it->second];
}

const QueryRecord* ProjectState::FindQuery(std::string_view query_id) const {
  auto it = query_index_.find(query_id);
  return it == query_index_.end() ? nullptr : &queries[it->second];
}

const QueryRecord* ProjectState::FindByNormalized(std::string_view normalized_sql) const {
  auto it = normalized_index_.find(normalized_sql);
  return it == normalized_index_.end() ? nullptr : &queries[it->second];
}

std::string ProjectState::NextQueryId() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "Q%04zu", queries.size() + 1);
  return buf;
}

std::string ProjectState::NextItemId() const {
  for (size_t n = items.size() + 1;; ++n) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "I%04zu", n);
    if (!FindItem(buf)) return buf;
  }
}

void Apply(ProjectState& state, const LogEvent& ev) {
  if (ev.seq != state.last_seq + 1)
    Fail(ErrorCode::kInvalidArgument, "event out of sequence: " + std::to_string(ev.seq));
  if ((state.last_seq == 0) != (ev.type == kEvProjectCreated))
    Fail(ErrorCode::kInvalidArgument, "log must start with a single project_created");

  try {
    if (ev.type == kEvProjectCreated) {
      state.project = ProjectFromJson(ev.data.at("project"));
    } else if (ev.type == kEvSchemaIngested) {
      sql::SchemaCatalog catalog = sql::SchemaFromJson(ev.data.at("catalog"));
      state.project.schema_id = catalog.schema_id();
      state.catalog = std::move(catalog);
    } else if (ev.type == kEvQueryIngested) {
      QueryRecord q = QueryRecordFromJson(ev.data.at("query"), state.project.dialect);
      std::string item_id = StringField(ev.data, "item_id");
      if (q.query_id.empty() || state.FindQuery(q.query_id))
        Fail(ErrorCode::kInvalidArgument, "duplicate query id " + q.query_id);
      if (state.FindByNormalized(q.normalized_sql))
        Fail(ErrorCode::kInvalidArgument, "duplicate query " + q.normalized_sql);
      if (item_id.empty() || state.FindItem(item_id) ||
          item_id.find_first_of(".:/ ") != std::string::npos)
        Fail(ErrorCode::kInvalidArgument, "bad item id \"" + item_id + "\"");
      AnnotationItem item = BuildItem(q, item_id, ev);
      state.query_index_[q.query_id] = state.queries.size();
      state.normalized_index_[q.normalized_sql] = state.queries.size();
      state.queries.push_back(std::move(q));
      state.item_index_[item_id] = state.items.size();
      state.items.push_back(std::move(item));
    } else if (ev.type == kEvRubricOverride) {
      std::string item_id = StringField(ev.data, "item_id");
      const AnnotationItem* item = state.FindItem(item_id);
      if (!item) Fail(ErrorCode::kNotFound, "unknown item \"" + item_id + "\"");
      if (item->state != ItemState::kAccepted)
        Fail(ErrorCode::kInvalidTransition, item_id + " is not accepted");
      auto judgment = evaluation::RubricJudgmentFromJson(ev.data.at("judgment"));
      if (judgment.level < 1 || judgment.level > 5)
        Fail(ErrorCode::kInvalidArgument, "rubric level must be 1..5");
      state.overrides[item_id] = std::move(judgment);
    } else if (ev.type == kEvLeaseAcquired || ev.type == kEvLeaseReleased ||
               ev.type == kEvCandidatesGenerated || ev.type == kEvFeedback) {
      std::string item_id;
      if (ev.type == kEvCandidatesGenerated) {
        item_id = ItemIdOf(StringField(ev.data, "target_id"));
      } else if (ev.type == kEvFeedback) {
        item_id = ItemIdOf(StringField(ev.data.at("event"), "target_id"));
      } else {
        item_id = StringField(ev.data, "item_id");
      }
      auto it = state.item_index_.find(item_id);
      if (it == state.item_index_.end())
        Fail(ErrorCode::kNotFound, "unknown item \"" + item_id + "\"");
      AnnotationItem copy = state.items[it->second];
      if (ev.type == kEvLeaseAcquired) {
        if (ev.actor.empty()) Fail(ErrorCode::kLeaseMismatch, "annotator id required");
        if (copy.state == ItemState::kAccepted || copy.state == ItemState::kDiscarded)
          Fail(ErrorCode::kInvalidTransition,
               item_id + " is " + std::string(ItemStateName(copy.state)));
        if (copy.HasLiveLease(ev.at) && copy.lease->annotator_id != ev.actor)
          Fail(ErrorCode::kLeaseMismatch, item_id + " is leased by another annotator");
        int64_t expires = ev.data.at("expires_at").get<int64_t>();
        if (expires <= ev.at) Fail(ErrorCode::kInvalidArgument, "lease already expired");
        copy.lease = Lease{ev.actor, expires};
      } else if (ev.type == kEvLeaseReleased) {
        if (copy.HasLiveLease(ev.at) && copy.lease->annotator_id != ev.actor)
          Fail(ErrorCode::kLeaseMismatch, item_id + " is leased by another annotator");
        copy.lease.reset();
      } else if (ev.type == kEvCandidatesGenerated) {
        ApplyCandidates(copy, ev);
      } else {
        ApplyFeedback(copy, ev);
      }
      state.items[it->second] = std::move(copy);
    } else if (ev.type != kEvProjectCreated) {
      Fail(ErrorCode::kInvalidArgument, "unknown event type \"" + ev.type + "\"");
    }
  } catch (const json::exception& ex) {
    Fail(ErrorCode::kInvalidArgument, std::string("malformed ") + ev.type + ": " + ex.what());
  }
  state.last_seq = ev.seq;
}

ProjectState Replay(const std::vector<LogEvent>& events) {
  ProjectState state;
  for (const auto& e : events) Apply(state, e);
  return state;
}

std::string NextCandidateId(const AnnotationTask& task) {
  return "c" + std::to_string(task.candidates.size() + 1);
}

std::string CurrentTarget(const AnnotationItem& item) {
  if (!item.nested() || !item.candidates.empty()) return item.item_id;
  for (const auto& s : item.sub_items) {
    if (s.state != ItemState::kAccepted) return s.sub_item_id;
  }
  return item.item_id;
}

std::optional<std::string> CheckInvariants(const AnnotationItem& item) {
  auto check_task = [](const AnnotationTask& t,
                       const std::string& id) -> std::optional<std::string> {
    int accepted = 0;
    std::set<std::string> ids;
    std::set<int> ranks;
    for (const auto& c : t.candidates) {
      if (c.status == CandidateStatus::kAccepted) ++accepted;
      if (!ids.insert(c.candidate_id).second) return id + ": duplicate candidate id";
      if (c.rank && !ranks.insert(*c.rank).second) return id + ": duplicate rank";
    }
    if (t.state == ItemState::kAccepted) {
      if (accepted != 1) return id + ": accepted without exactly one accepted candidate";
      if (t.accepted_text.empty()) return id + ": accepted without text";
      if (t.AcceptedCandidate()->text != t.accepted_text) return id + ": text mismatch";
    } else if (accepted != 0) {
      return id + ": accepted candidate on a " + std::string(ItemStateName(t.state)) + " task";
    }
    if (t.state == ItemState::kPending && !t.candidates.empty())
      return id + ": pending with candidates";
    if (t.state != ItemState::kPending && t.candidates.empty())
      return id + ": no candidates past pending";
    return std::nullopt;
  };
  if (auto v = check_task(item, item.item_id)) return v;
  for (const auto& s : item.sub_items) {
    if (auto v = check_task(s, s.sub_item_id)) return v;
  }
  if (item.nested() && item.state != ItemState::kPending) {
    for (const auto& s : item.sub_items) {
      if (s.state != ItemState::kAccepted) return item.item_id + ": recomposed early";
    }
  }
  if ((item.state == ItemState::kAccepted || item.state == ItemState::kDiscarded) && item.lease)
    return item.item_id + ": terminal item still leased";
  return std::nullopt;
}

}  // namespace benchforge::workflow
