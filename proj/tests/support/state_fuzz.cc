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

#include "tests/support/state_fuzz.h"

#include <algorithm>
#include <map>
#include <optional>
#include <random>

#include "benchforge/error.h"
#include "benchforge/generation/candidate.h"
#include "benchforge/workflow/ingest.h"
#include "benchforge/workflow/state.h"

namespace benchforge::testing {
namespace {

using generation::CandidateStatus;
using nlohmann::json;
using workflow::AnnotationItem;
using workflow::AnnotationTask;
using workflow::FeedbackKind;
using workflow::ItemState;
using workflow::LogEvent;
using workflow::ProjectState;

const char* const kSql[] = {
    "SELECT name FROM students WHERE gpa > 3",
    "SELECT title FROM courses ORDER BY title",
    "SELECT name FROM students WHERE major_dept IN (SELECT dept_id FROM departments "
    "WHERE budget > (SELECT AVG(budget) FROM departments))",
    "SELECT code FROM terms",
};
const char* const kAnnotators[] = {"ann1", "ann2", "ann3"};
const char* const kTexts[] = {"List names.", "Show every title.", "Give codes.",
                              "Find the students."};

// Moves that one event may make: the direct legal ones plus the
// drafted -> in_review -> terminal hop that feedback on a drafted task does.
bool Reachable(ItemState from, ItemState to) {
  if (from == to || workflow::IsLegalTransition(from, to)) return true;
  return from == ItemState::kDrafted &&
         (to == ItemState::kAccepted || to == ItemState::kDiscarded);
}

class Fuzzer {
 public:
  Fuzzer(uint64_t seed, FuzzStats& stats) : rng_(seed), stats_(stats) {}

  void RunSequence(size_t n_events) {
    ProjectState state;
    std::vector<LogEvent> log;
    now_ = 1'700'000'000;
    Emit(state, log, workflow::kEvProjectCreated, "",
         {{"project", workflow::ToJson(workflow::Project{"fuzz", "fuzz"})}});
    for (size_t i = 0; i < std::size(kSql); ++i) {
      workflow::LogEntry entry;
      entry.sql = kSql[i];
      auto prep = workflow::PrepareQuery(entry, sql::Dialect::kGeneric, nullptr);
      prep.record.query_id = state.NextQueryId();
      json data = {{"query", workflow::ToJson(prep.record)}, {"item_id", state.NextItemId()}};
      if (i == 3) data["accepted"] = {{"text", "All term codes."}, {"provenance", json::object()}};
      Emit(state, log, workflow::kEvQueryIngested, "", data);
    }
    for (size_t i = 0; i < n_events; ++i) Step(state, log);
    ++stats_.sequences;
    ProjectState replayed;
    try {
      replayed = workflow::Replay(log);
    } catch (const Error& e) {
      Note("replay threw: " + std::string(e.what()));
      ++stats_.replay_mismatches;
      return;
    }
    if (!(replayed == state)) {
      Note("replay differs from live state");
      ++stats_.replay_mismatches;
    }
  }

 private:
  size_t Pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng_); }
  bool Chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  void Note(std::string s) {
    if (stats_.samples.size() < 10) stats_.samples.push_back(std::move(s));
  }

  void Emit(ProjectState& state, std::vector<LogEvent>& log, std::string_view type,
            const std::string& actor, json data) {
    LogEvent ev;
    ev.seq = state.last_seq + 1;
    ev.type = std::string(type);
    ev.at = now_;
    ev.time = workflow::IsoTime(now_);
    ev.actor = actor;
    ev.data = std::move(data);
    workflow::Apply(state, ev);
    log.push_back(std::move(ev));
  }

  std::string CandidateId(const AnnotationTask& task) {
    if (task.candidates.empty() || Chance(0.05)) return "c" + std::to_string(Pick(9) + 1);
    return task.candidates[Pick(task.candidates.size())].candidate_id;
  }

  json RandomPayload(FeedbackKind kind, const AnnotationTask& task) {
    switch (kind) {
      case FeedbackKind::kRank: {
        std::vector<std::string> ids;
        for (const auto& c : task.candidates) {
          if (c.status != CandidateStatus::kDiscarded || Chance(0.1)) ids.push_back(c.candidate_id);
        }
        std::shuffle(ids.begin(), ids.end(), rng_);
        if (!ids.empty()) ids.resize(1 + Pick(ids.size()));
        if (Chance(0.05)) ids.push_back("c42");
        return {{"order", ids}};
      }
      case FeedbackKind::kEdit: {
        json p = {{"text", Chance(0.05) ? " " : kTexts[Pick(std::size(kTexts))]},
                  {"new_candidate_id", Chance(0.95) ? workflow::NextCandidateId(task) : "c1"}};
        if (Chance(0.7)) p["candidate_id"] = CandidateId(task);
        return p;
      }
      case FeedbackKind::kDiscard:
        return Chance(0.8) ? json{{"candidate_id", CandidateId(task)}} : json::object();
      case FeedbackKind::kRefine:
        return {{"note", "mention the filter"}};
      case FeedbackKind::kFlag:
        return {{"reason", "unclear"}};
      case FeedbackKind::kAccept: {
        std::string id = CandidateId(task);
        const auto* c = task.FindCandidate(id);
        std::string text = c && Chance(0.9) ? c->text : "Something else.";
        return {{"candidate_id", id}, {"final_text", text}};
      }
      case FeedbackKind::kReopen:
        return json::object();
    }
    return json::object();
  }

  void Step(ProjectState& state, std::vector<LogEvent>& log) {
    now_ += static_cast<int64_t>(Pick(600));
    // The nested item needs many steps before a merge; favor it.
    const AnnotationItem& item = state.items[Chance(0.4) ? 2 : Pick(state.items.size())];
    std::string actor = kAnnotators[Pick(std::size(kAnnotators))];
    // Mostly act as the lease holder, as a real client would.
    if (item.lease && Chance(0.8)) actor = item.lease->annotator_id;
    std::string target = Chance(0.75) ? workflow::CurrentTarget(item)
                                      : (item.nested() && Chance(0.5)
                                             ? item.sub_items[Pick(item.sub_items.size())].sub_item_id
                                             : item.item_id);
    const AnnotationTask* task = item.FindTask(target);

    std::string type;
    json data;
    double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    // A share of steps push the current target forward the way a diligent
    // annotator would, so deep states (merges, reopens) are reached.
    if (Chance(0.3)) {
      bool holds = item.HasLiveLease(now_) && item.lease->annotator_id == actor;
      if (!holds) {
        r = 0.0;
      } else if (task->candidates.empty()) {
        r = 0.2;
      } else {
        r = 1.0;
      }
    }
    if (r < 0.15) {
      type = workflow::kEvLeaseAcquired;
      data = {{"item_id", item.item_id}, {"expires_at", now_ + 1800}};
    } else if (r < 0.19) {
      type = workflow::kEvLeaseReleased;
      data = {{"item_id", item.item_id}};
    } else if (r < 0.34) {
      type = workflow::kEvCandidatesGenerated;
      json cands = json::array();
      size_t next = task->candidates.size() + 1;
      size_t n = 1 + Pick(4);
      for (size_t i = 0; i < n; ++i) {
        generation::Candidate c;
        c.candidate_id = "c" + std::to_string(next++);
        c.text = kTexts[(i + next) % std::size(kTexts)];
        c.model_id = "mock";
        cands.push_back(generation::ToJson(c));
      }
      data = {{"target_id", target}, {"candidates", cands}, {"discard_proposed", Chance(0.3)}};
    } else {
      static const FeedbackKind kinds[] = {FeedbackKind::kRank,   FeedbackKind::kEdit,
                                           FeedbackKind::kDiscard, FeedbackKind::kRefine,
                                           FeedbackKind::kFlag,   FeedbackKind::kAccept,
                                           FeedbackKind::kAccept, FeedbackKind::kReopen};
      workflow::FeedbackEvent fb;
      fb.event_id = "E" + std::to_string(state.last_seq + 1);
      fb.annotator_id = actor;
      fb.kind = r >= 1.0 ? FeedbackKind::kAccept : kinds[Pick(std::size(kinds))];
      fb.target_id = target;
      fb.payload = RandomPayload(fb.kind, *task);
      fb.timestamp = workflow::IsoTime(now_);
      type = workflow::kEvFeedback;
      data = {{"event", workflow::ToJson(fb)}, {"lease_expires_at", now_ + 1800}};
    }

    ProjectState before = state;
    try {
      Emit(state, log, type, actor, data);
    } catch (const Error&) {
      ++stats_.events_rejected;
      if (!(state == before)) {
        ++stats_.dirty_rejections;
        Note("rejected " + type + " changed state");
      }
      return;
    }
    ++stats_.events_applied;
    Check(before, state, log.back());
  }

  void Check(const ProjectState& before, const ProjectState& after, const LogEvent& ev) {
    for (size_t i = 0; i < after.items.size(); ++i) {
      const AnnotationItem& a = after.items[i];
      const AnnotationItem& b = before.items[i];
      auto check_task = [&](const AnnotationTask& tb, const AnnotationTask& ta,
                            const std::string& id) {
        if (!Reachable(tb.state, ta.state)) {
          ++stats_.illegal_transitions;
          Note(id + ": " + std::string(workflow::ItemStateName(tb.state)) + " -> " +
               std::string(workflow::ItemStateName(ta.state)) + " via " + ev.type);
        }
        int accepted = 0;
        for (const auto& c : ta.candidates) accepted += c.status == CandidateStatus::kAccepted;
        if (accepted > 1) {
          ++stats_.double_accepts;
          Note(id + ": two accepted candidates");
        }
        if (tb.state != ItemState::kAccepted && ta.state == ItemState::kAccepted)
          ++stats_.accepts;
        if (tb.state == ItemState::kAccepted && ta.state == ItemState::kInReview)
          ++stats_.reopens;
      };
      check_task(b, a, a.item_id);
      for (size_t s = 0; s < a.sub_items.size(); ++s)
        check_task(b.sub_items[s], a.sub_items[s], a.sub_items[s].sub_item_id);
      if (auto v = workflow::CheckInvariants(a)) {
        ++stats_.invariant_violations;
        Note(*v);
      }
      if (a == b) continue;
      // Only the live lease holder may change an item. Acquiring, releasing
      // and reopening need just the absence of someone else's live lease.
      bool other_holds = b.HasLiveLease(ev.at) && b.lease->annotator_id != ev.actor;
      bool holds = b.HasLiveLease(ev.at) && b.lease->annotator_id == ev.actor;
      bool reopen = ev.type == workflow::kEvFeedback &&
                    ev.data["event"].value("kind", "") == "reopen";
      bool lenient = ev.type == workflow::kEvLeaseAcquired ||
                     ev.type == workflow::kEvLeaseReleased || reopen;
      if (lenient ? other_holds : !holds) {
        ++stats_.lease_violations;
        Note(a.item_id + ": " + ev.type + " by " + ev.actor + " without the lease");
      }
      if (a.HasLiveLease(ev.at) && b.HasLiveLease(ev.at) &&
          a.lease->annotator_id != b.lease->annotator_id) {
        ++stats_.lease_violations;
        Note(a.item_id + ": live lease stolen");
      }
      if (a.nested() && b.candidates.empty() && !a.candidates.empty()) ++stats_.merges;
    }
  }

  std::mt19937_64 rng_;
  FuzzStats& stats_;
  int64_t now_ = 0;
};

}  // namespace

FuzzStats RunStateFuzz(uint64_t seed, size_t sequences, size_t events_per_sequence) {
  FuzzStats stats;
  Fuzzer fuzzer(seed, stats);
  for (size_t i = 0; i < sequences; ++i) fuzzer.RunSequence(events_per_sequence);
  return stats;
}

}  // namespace benchforge::testing
