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

#include "benchforge/error.h"
#include "benchforge/workflow/ingest.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "tests/support/state_fuzz.h"

namespace benchforge::workflow {
namespace {

using nlohmann::json;

class ReducerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Push(kEvProjectCreated, "", {{"project", ToJson(Project{"p", "p"})}});
  }

  void Push(std::string_view type, const std::string& actor, json data) {
    LogEvent ev;
    ev.seq = state_.last_seq + 1;
    ev.type = std::string(type);
    ev.at = now_;
    ev.time = IsoTime(now_);
    ev.actor = actor;
    ev.data = std::move(data);
    Apply(state_, ev);
    log_.push_back(ev);
  }

  std::string Ingest(const std::string& sql) {
    LogEntry e;
    e.sql = sql;
    auto prep = PrepareQuery(e, sql::Dialect::kGeneric, nullptr);
    prep.record.query_id = state_.NextQueryId();
    std::string id = state_.NextItemId();
    Push(kEvQueryIngested, "", {{"query", ToJson(prep.record)}, {"item_id", id}});
    return id;
  }

  void Lease(const std::string& item, const std::string& who) {
    Push(kEvLeaseAcquired, who, {{"item_id", item}, {"expires_at", now_ + 1800}});
  }

  void Generate(const std::string& target, const std::string& who, int n = 4) {
    const AnnotationTask* task = state_.FindItem(ItemIdOf(target))->FindTask(target);
    json cands = json::array();
    for (int i = 0; i < n; ++i) {
      generation::Candidate c;
      c.candidate_id = "c" + std::to_string(task->candidates.size() + i + 1);
      c.text = "Text " + c.candidate_id + " of " + target;
      cands.push_back(generation::ToJson(c));
    }
    Push(kEvCandidatesGenerated, who, {{"target_id", target}, {"candidates", cands}});
  }

  void Feedback(const std::string& target, const std::string& who, FeedbackKind kind,
                json payload) {
    FeedbackEvent fb;
    fb.event_id = "E" + std::to_string(state_.last_seq + 1);
    fb.annotator_id = who;
    fb.kind = kind;
    fb.target_id = target;
    fb.payload = std::move(payload);
    Push(kEvFeedback, who, {{"event", ToJson(fb)}, {"lease_expires_at", now_ + 1800}});
  }

  const AnnotationItem& Item(const std::string& id) { return *state_.FindItem(id); }

  ErrorCode CodeOf(const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "no error";
    return ErrorCode::kIoError;
  }

  ProjectState state_;
  std::vector<LogEvent> log_;
  int64_t now_ = 1'700'000'000;
};

TEST(TransitionTest, OnlyTheDocumentedMoves) {
  using S = ItemState;
  const S all[] = {S::kPending, S::kDrafted, S::kInReview, S::kAccepted, S::kDiscarded};
  int legal = 0;
  for (S a : all) {
    for (S b : all) legal += IsLegalTransition(a, b);
  }
  EXPECT_EQ(legal, 5);
  EXPECT_TRUE(IsLegalTransition(S::kPending, S::kDrafted));
  EXPECT_TRUE(IsLegalTransition(S::kDrafted, S::kInReview));
  EXPECT_TRUE(IsLegalTransition(S::kInReview, S::kAccepted));
  EXPECT_TRUE(IsLegalTransition(S::kInReview, S::kDiscarded));
  EXPECT_TRUE(IsLegalTransition(S::kAccepted, S::kInReview));
  EXPECT_FALSE(IsLegalTransition(S::kPending, S::kAccepted));
  EXPECT_FALSE(IsLegalTransition(S::kDiscarded, S::kInReview));
}

TEST_F(ReducerTest, FlatItemLifecycle) {
  std::string id = Ingest("SELECT a FROM t");
  EXPECT_EQ(Item(id).state, ItemState::kPending);
  Lease(id, "ann");
  Generate(id, "ann");
  EXPECT_EQ(Item(id).state, ItemState::kDrafted);
  Feedback(id, "ann", FeedbackKind::kRank, {{"order", {"c3", "c1", "c2", "c4"}}});
  EXPECT_EQ(Item(id).state, ItemState::kInReview);
  EXPECT_EQ(Item(id).FindCandidate("c3")->rank, 1);
  EXPECT_EQ(Item(id).FindCandidate("c4")->rank, 4);
  Feedback(id, "ann", FeedbackKind::kAccept,
           {{"candidate_id", "c3"}, {"final_text", Item(id).FindCandidate("c3")->text}});
  EXPECT_EQ(Item(id).state, ItemState::kAccepted);
  EXPECT_FALSE(Item(id).lease);
  EXPECT_EQ(CheckInvariants(Item(id)), std::nullopt);
  EXPECT_EQ(Replay(log_), state_);
}

TEST_F(ReducerTest, FeedbackWithoutLeaseIsRejected) {
  std::string id = Ingest("SELECT a FROM t");
  Lease(id, "ann");
  Generate(id, "ann");
  ProjectState before = state_;
  EXPECT_EQ(CodeOf([&] { Feedback(id, "other", FeedbackKind::kFlag, {{"reason", "x"}}); }),
            ErrorCode::kLeaseMismatch);
  EXPECT_EQ(CodeOf([&] { Lease(id, "other"); }), ErrorCode::kLeaseMismatch);
  EXPECT_EQ(state_, before);
  // Expired leases free the item.
  now_ += 1801;
  Lease(id, "other");
  EXPECT_EQ(Item(id).lease->annotator_id, "other");
}

TEST_F(ReducerTest, DiscardedCandidateCannotBeAccepted) {
  std::string id = Ingest("SELECT a FROM t");
  Lease(id, "ann");
  Generate(id, "ann");
  Feedback(id, "ann", FeedbackKind::kDiscard, {{"candidate_id", "c2"}});
  EXPECT_EQ(CodeOf([&] {
              Feedback(id, "ann", FeedbackKind::kAccept,
                       {{"candidate_id", "c2"}, {"final_text", "Text c2 of I0001"}});
            }),
            ErrorCode::kUnknownCandidate);
  EXPECT_EQ(CodeOf([&] {
              Feedback(id, "ann", FeedbackKind::kRank, {{"order", {"c9"}}});
            }),
            ErrorCode::kUnknownCandidate);
}

TEST_F(ReducerTest, NestedParentWaitsForSubItems) {
  std::string id = Ingest("SELECT a FROM t WHERE b IN (SELECT b FROM u)");
  ASSERT_EQ(Item(id).sub_items.size(), 2u);
  EXPECT_EQ(Item(id).sub_items[0].sub_item_id, id + ".step_1");
  EXPECT_EQ(Item(id).sub_items[1].sub_item_id, id + ".final");
  Lease(id, "ann");
  EXPECT_EQ(CodeOf([&] { Generate(id, "ann"); }), ErrorCode::kInvalidTransition);
  for (const char* part : {".step_1", ".final"}) {
    std::string sub = id + part;
    EXPECT_EQ(CurrentTarget(Item(id)), sub);
    Lease(id, "ann");
    Generate(sub, "ann");
    Feedback(sub, "ann", FeedbackKind::kAccept,
             {{"candidate_id", "c1"}, {"final_text", "Text c1 of " + sub}});
    EXPECT_EQ(Item(id).state, ItemState::kPending);
  }
  EXPECT_EQ(CurrentTarget(Item(id)), id);
  Lease(id, "ann");
  Generate(id, "ann");
  EXPECT_EQ(Item(id).state, ItemState::kDrafted);
  // Sub-items are frozen once the parent is recomposed.
  EXPECT_EQ(CodeOf([&] { Feedback(id + ".final", "ann", FeedbackKind::kReopen, {}); }),
            ErrorCode::kInvalidTransition);
  EXPECT_EQ(Replay(log_), state_);
}

TEST_F(ReducerTest, ReopenReturnsToReview) {
  std::string id = Ingest("SELECT a FROM t");
  Lease(id, "ann");
  Generate(id, "ann");
  Feedback(id, "ann", FeedbackKind::kAccept,
           {{"candidate_id", "c1"}, {"final_text", "Text c1 of I0001"}});
  EXPECT_EQ(CodeOf([&] { Lease(id, "ann"); }), ErrorCode::kInvalidTransition);
  Feedback(id, "ann2", FeedbackKind::kReopen, json::object());
  EXPECT_EQ(Item(id).state, ItemState::kInReview);
  EXPECT_EQ(Item(id).lease->annotator_id, "ann2");
  EXPECT_EQ(Item(id).AcceptedCandidate(), nullptr);
  EXPECT_TRUE(Item(id).accepted_text.empty());
}

TEST_F(ReducerTest, AcceptMustMatchCandidateText) {
  std::string id = Ingest("SELECT a FROM t");
  Lease(id, "ann");
  Generate(id, "ann");
  EXPECT_EQ(CodeOf([&] {
              Feedback(id, "ann", FeedbackKind::kAccept,
                       {{"candidate_id", "c1"}, {"final_text", "different"}});
            }),
            ErrorCode::kInvalidArgument);
  Feedback(id, "ann", FeedbackKind::kEdit,
           {{"candidate_id", "c1"}, {"text", "different"}, {"new_candidate_id", "c5"}});
  EXPECT_EQ(Item(id).FindCandidate("c5")->origin, generation::CandidateOrigin::kAnnotatorEdited);
  EXPECT_EQ(Item(id).FindCandidate("c5")->status, generation::CandidateStatus::kEdited);
  Feedback(id, "ann", FeedbackKind::kAccept,
           {{"candidate_id", "c5"}, {"final_text", "different"}});
  EXPECT_EQ(Item(id).accepted_text, "different");
}

TEST_F(ReducerTest, RefineRegenerationDiscardsProposed) {
  std::string id = Ingest("SELECT a FROM t");
  Lease(id, "ann");
  Generate(id, "ann");
  Feedback(id, "ann", FeedbackKind::kEdit, {{"text", "mine"}, {"new_candidate_id", "c5"}});
  Feedback(id, "ann", FeedbackKind::kRefine, {{"note", "mention a"}});
  json cands = json::array();
  for (int i = 6; i <= 9; ++i) {
    generation::Candidate c;
    c.candidate_id = "c" + std::to_string(i);
    c.text = "again " + std::to_string(i);
    cands.push_back(generation::ToJson(c));
  }
  Push(kEvCandidatesGenerated, "ann",
       {{"target_id", id}, {"candidates", cands}, {"discard_proposed", true}});
  const auto& item = Item(id);
  EXPECT_THAT(item.refinement_notes, ::testing::ElementsAre("mention a"));
  for (int i = 1; i <= 4; ++i)
    EXPECT_EQ(item.FindCandidate("c" + std::to_string(i))->status,
              generation::CandidateStatus::kDiscarded);
  EXPECT_EQ(item.FindCandidate("c5")->status, generation::CandidateStatus::kEdited);
  EXPECT_EQ(item.FindCandidate("c9")->status, generation::CandidateStatus::kProposed);
}

TEST_F(ReducerTest, DiscardWholeItemIsTerminal) {
  std::string id = Ingest("SELECT a FROM t");
  Lease(id, "ann");
  Generate(id, "ann");
  Feedback(id, "ann", FeedbackKind::kDiscard, json::object());
  EXPECT_EQ(Item(id).state, ItemState::kDiscarded);
  EXPECT_FALSE(Item(id).lease);
  EXPECT_EQ(CodeOf([&] { Feedback(id, "ann", FeedbackKind::kReopen, {}); }),
            ErrorCode::kInvalidTransition);
}

TEST_F(ReducerTest, OutOfSequenceEventsAreRejected) {
  LogEvent ev;
  ev.seq = state_.last_seq + 2;
  ev.type = std::string(kEvLeaseReleased);
  EXPECT_THROW(Apply(state_, ev), Error);
}

TEST(LogEventTest, JsonRoundTrip) {
  LogEvent e{7, "lease_acquired", 1'700'000'000, "", "ann", {{"item_id", "I0001"}}};
  e.time = IsoTime(e.at);
  EXPECT_EQ(e.time, "2023-11-14T22:13:20Z");
  LogEvent back = LogEventFromJson(ToJson(e));
  EXPECT_EQ(ToJson(back), ToJson(e));
}

TEST(StateFuzzTest, TenThousandSequencesStaySafe) {
  auto stats = testing::RunStateFuzz(20261019, 10000, 40);
  EXPECT_EQ(stats.sequences, 10000u);
  EXPECT_EQ(stats.illegal_transitions, 0u);
  EXPECT_EQ(stats.double_accepts, 0u);
  EXPECT_EQ(stats.lease_violations, 0u);
  EXPECT_EQ(stats.invariant_violations, 0u);
  EXPECT_EQ(stats.dirty_rejections, 0u);
  EXPECT_EQ(stats.replay_mismatches, 0u);
  for (const auto& s : stats.samples) ADD_FAILURE() << s;
  // The generator must actually reach the interesting states.
  EXPECT_GT(stats.accepts, 1000u);
  EXPECT_GT(stats.reopens, 100u);
  EXPECT_GT(stats.merges, 10u);
  EXPECT_GT(stats.events_rejected, 1000u);
}

}  // namespace
}  // namespace benchforge::workflow
