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

// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures, so ctest goes red on any of them.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "benchforge/error.h"
#include "benchforge/evaluation/database.h"
#include "benchforge/evaluation/metrics.h"
#include "benchforge/evaluation/rubric.h"
#include "benchforge/generation/backend.h"
#include "benchforge/generation/candidate.h"
#include "benchforge/generation/generate.h"
#include "benchforge/retrieval/embedding.h"
#include "benchforge/retrieval/index.h"
#include "benchforge/sql/decompose.h"
#include "benchforge/sql/parser.h"
#include "benchforge/sql/render.h"
#include "benchforge/sql/schema.h"
#include "cli/cli.h"
#include "tests/support/fixtures.h"
#include "tests/support/state_fuzz.h"

namespace benchforge {
namespace {

using nlohmann::json;
using testing::FixturePath;
using testing::ReadFile;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  const char* name;
  double budget_seconds;  // 0 = no runtime bound
  std::function<Outcome()> run;
};

const evaluation::Database& FixtureDb() {
  static const evaluation::Database db = evaluation::Database::OpenFixture(FixturePath("db"));
  return db;
}

const sql::SchemaCatalog& FixtureCatalog() {
  static const sql::SchemaCatalog catalog =
      sql::LoadSchema(ReadFile(FixturePath("db/schema.sql")));
  return catalog;
}

Outcome DecompositionSoundness() {
  int total = 0, sound = 0;
  std::string first_bad;
  for (const auto& q : testing::LoadDefaultCorpus()) {
    if (q.klass != "nested") continue;
    ++total;
    try {
      auto plan = sql::Decompose(sql::ParseSql(q.sql), &FixtureCatalog());
      auto want = FixtureDb().Execute(q.sql);
      auto got = FixtureDb().Execute(sql::PlanToSql(plan));
      if (evaluation::CompareResults(got, want).multiset_equal) {
        ++sound;
        continue;
      }
    } catch (const std::exception& e) {
      if (first_bad.empty()) first_bad = q.name + ": " + e.what();
      continue;
    }
    if (first_bad.empty()) first_bad = q.name;
  }
  std::string detail = std::to_string(sound) + "/" + std::to_string(total) + " nested queries";
  if (!first_bad.empty()) detail += ", first failure " + first_bad;
  return {total >= 20 && sound == total, detail};
}

Outcome ParserRoundTrip() {
  auto corpus = testing::LoadDefaultCorpus();
  size_t ok = 0;
  int joins = 0, setops = 0, subqueries = 0, order_limit = 0;
  std::string first_bad;
  for (const auto& q : corpus) {
    std::string upper = q.sql;
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    joins += upper.find(" JOIN ") != std::string::npos;
    setops += upper.find("UNION") != std::string::npos ||
              upper.find("INTERSECT") != std::string::npos ||
              upper.find("EXCEPT") != std::string::npos;
    subqueries += upper.find("(SELECT") != std::string::npos ||
                  upper.find("( SELECT") != std::string::npos;
    order_limit += upper.find("ORDER BY") != std::string::npos &&
                   upper.find("LIMIT") != std::string::npos;
    try {
      sql::SqlAst first = sql::ParseSql(q.sql);
      std::string text = sql::RenderSql(first);
      sql::SqlAst second = sql::ParseSql(text);
      if (first == second && sql::RenderSql(second) == text) {
        ++ok;
        continue;
      }
    } catch (const std::exception& e) {
      if (first_bad.empty()) first_bad = q.name + ": " + e.what();
      continue;
    }
    if (first_bad.empty()) first_bad = q.name;
  }
  bool spans = joins && setops && subqueries && order_limit;
  std::ostringstream d;
  d << ok << "/" << corpus.size() << " queries; joins " << joins << ", set ops " << setops
    << ", subqueries " << subqueries << ", order+limit " << order_limit;
  if (!first_bad.empty()) d << ", first failure " << first_bad;
  return {corpus.size() >= 50 && ok == corpus.size() && spans, d.str()};
}

// Brute-force cosine scan against the index. Every tenth entry repeats an
// earlier text so equal scores must fall back to insertion order.
Outcome RetrievalExactness() {
  std::mt19937_64 rng(1019);
  static const char* kWords[] = {"select", "from",  "where", "students", "terms", "count",
                                 "name",   "gpa",   "join",  "order",    "group", "having",
                                 "avg",    "limit", "dept",  "course",   "title", "credits"};
  auto random_text = [&] {
    std::string s;
    int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) s += std::string(kWords[rng() % 18]) + " ";
    return s;
  };
  retrieval::HashTrigramEmbedder embedder;
  retrieval::VectorIndex index;
  std::vector<retrieval::EmbeddingVector> vecs;
  std::vector<std::string> texts;
  for (int i = 0; i < 1000; ++i) {
    std::string t = (i % 10 == 9) ? texts[rng() % texts.size()] : random_text();
    texts.push_back(t);
    vecs.push_back(embedder.Embed(t));
    index.Add("e" + std::to_string(i), retrieval::EntryKind::kExample, t,
              retrieval::ExamplePair{}, vecs.back());
  }
  auto cosine = [](const retrieval::EmbeddingVector& a, const retrieval::EmbeddingVector& b) {
    double dot = 0;
    for (size_t d = 0; d < a.values.size(); ++d) dot += a.values[d] * b.values[d];
    return dot;  // both sides are unit length
  };
  size_t checks = 0, mismatches = 0;
  std::string first_bad;
  for (int q = 0; q < 100; ++q) {
    auto query = embedder.Embed(random_text());
    std::vector<std::pair<double, int>> brute;
    for (int i = 0; i < 1000; ++i) brute.emplace_back(cosine(query, vecs[i]), i);
    std::stable_sort(brute.begin(), brute.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (size_t k : {1u, 3u, 10u}) {
      ++checks;
      auto hits = index.TopK(query, k);
      bool same = hits.size() == k;
      for (size_t r = 0; same && r < k; ++r)
        same = hits[r].entry.entry_id == "e" + std::to_string(brute[r].second) &&
               std::abs(hits[r].score - brute[r].first) <= 1e-12;
      if (!same) {
        ++mismatches;
        if (first_bad.empty())
          first_bad = "query " + std::to_string(q) + " k=" + std::to_string(k);
      }
    }
  }
  std::string detail = std::to_string(checks - mismatches) + "/" + std::to_string(checks) +
                       " rankings over 1000 entries";
  if (!first_bad.empty()) detail += ", first mismatch " + first_bad;
  return {mismatches == 0, detail};
}

std::vector<sql::TableDef> TablesFor(const std::string& text) {
  std::vector<sql::TableDef> out;
  for (const auto& t : FixtureCatalog().tables())
    if (text.find(t.name) != std::string::npos) out.push_back(t);
  return out;
}

std::string CandidatesJson(const generation::GenerationResult& r) {
  json j = json::array();
  for (const auto& c : r.candidates) j.push_back(generation::ToJson(c));
  return j.dump();
}

Outcome CandidateContract() {
  generation::MockBackend mock;
  size_t runs = 0, four = 0, reproducible = 0;
  for (const auto& q : testing::LoadDefaultCorpus()) {
    generation::PromptContext ctx;
    ctx.target_sql = q.sql;
    ctx.tables = TablesFor(q.sql);
    ++runs;
    auto r = generation::GenerateCandidates(ctx, generation::GenerationParams{}, mock);
    if (r.candidates.size() == 4) ++four;
    generation::GenerationParams seeded;
    seeded.seed = 7;
    auto a = generation::GenerateCandidates(ctx, seeded, mock);
    generation::MockBackend fresh;
    auto b = generation::GenerateCandidates(ctx, seeded, fresh);
    if (CandidatesJson(a) == CandidatesJson(b) && a.candidates.size() == 4) ++reproducible;
  }
  std::ostringstream d;
  d << four << "/" << runs << " default runs gave 4 candidates; " << reproducible << "/" << runs
    << " seeded runs byte-identical";
  return {runs > 0 && four == runs && reproducible == runs, d.str()};
}

Outcome StateFuzz() {
  auto s = testing::RunStateFuzz(20261019, 10000, 40);
  std::ostringstream d;
  d << s.sequences << " sequences, " << s.events_applied << " applied, " << s.events_rejected
    << " rejected, " << s.accepts << " accepts; illegal " << s.illegal_transitions
    << ", double-accept " << s.double_accepts << ", lease " << s.lease_violations
    << ", invariant " << s.invariant_violations << ", dirty " << s.dirty_rejections
    << ", replay " << s.replay_mismatches;
  if (!s.samples.empty()) d << "; " << s.samples.front();
  bool pass = s.sequences == 10000 && s.illegal_transitions == 0 && s.double_accepts == 0 &&
              s.lease_violations == 0 && s.invariant_violations == 0 &&
              s.dirty_rejections == 0 && s.replay_mismatches == 0 && s.samples.empty();
  return {pass, d.str()};
}

Outcome RubricSuite() {
  auto cases = json::parse(ReadFile(FixturePath("eval/rubric_cases.json")));
  int per_level[6] = {};
  size_t correct = 0, consistent = 0;
  std::string first_bad;
  for (const auto& c : cases) {
    std::string id = c.at("id").get<std::string>();
    std::string original = c.at("original").get<std::string>();
    std::string regen = c.at("regen").get<std::string>();
    int want = c.at("level").get<int>();
    auto j = evaluation::ClassifyRubric(original, regen, FixtureDb(), FixtureCatalog());
    if (want >= 1 && want <= 5) ++per_level[want];
    if (j.level == want) {
      ++correct;
    } else if (first_bad.empty()) {
      first_bad = id + " got " + std::to_string(j.level);
    }
    bool exec = evaluation::ExecAccuracyMatch(regen, original, FixtureDb());
    bool fails = false;
    try {
      FixtureDb().Execute(regen);
    } catch (const evaluation::ExecError&) {
      fails = true;
    }
    bool ok = (j.level != 5 || exec) && (j.level > 3 || !exec) && ((j.level == 1) == fails);
    if (ok) {
      ++consistent;
    } else if (first_bad.empty()) {
      first_bad = id + " inconsistent";
    }
  }
  bool three_each = true;
  for (int l = 1; l <= 5; ++l) three_each = three_each && per_level[l] == 3;
  std::ostringstream d;
  d << correct << "/" << cases.size() << " at intended level, " << consistent
    << " consistent";
  if (!first_bad.empty()) d << ", first failure " << first_bad;
  return {cases.size() == 15 && three_each && correct == 15 && consistent == 15, d.str()};
}

Outcome ExecAccuracy() {
  auto pairs = json::parse(ReadFile(FixturePath("eval/exec_pairs.json")));
  size_t correct = 0;
  std::string first_bad;
  for (const auto& p : pairs) {
    bool got = evaluation::ExecAccuracyMatch(p.at("pred").get<std::string>(),
                                             p.at("gold").get<std::string>(), FixtureDb());
    if (got == p.at("expected").get<bool>())
      ++correct;
    else if (first_bad.empty())
      first_bad = p.at("id").get<std::string>();
  }
  std::string detail = std::to_string(correct) + "/" + std::to_string(pairs.size()) +
                       " pairs as expected";
  if (!first_bad.empty()) detail += ", first failure " + first_bad;
  return {pairs.size() == 10 && correct == 10, detail};
}

Outcome MetricGoldens() {
  double identity = evaluation::Bleu("show the names of all students",
                                     {"show the names of all students"});
  double rouge = evaluation::RougeL("a b c d", "a c d e");
  // 3 candidate tokens against 4: smoothed precisions are all 1, so BLEU is
  // the brevity penalty exp(1 - 4/3).
  double golden = evaluation::Bleu("the cat sat", {"the cat sat down"});
  bool pass = identity == 1.0 && std::abs(rouge - 0.75) <= 1e-9 &&
              std::abs(golden - 0.716531310573789) <= 1e-9;
  char buf[160];
  std::snprintf(buf, sizeof buf, "bleu identity %.12f, rouge_l %.12f, bleu golden %.12f",
                identity, rouge, golden);
  return {pass, buf};
}

int Cli(const std::string& root, std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), {"--root", root});
  std::ostringstream o, e;
  int code = cli::Run(args, o, e);
  if (out) *out = o.str();
  if (code != 0) std::fprintf(stderr, "benchforge %s: %s%s\n", args[2].c_str(),
                              o.str().c_str(), e.str().c_str());
  return code;
}

Outcome EndToEndSmoke() {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() /
                 ("benchforge-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string root = (dir / "ws").string();
  std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
  std::string report_path = (dir / "eval.json").string();
  std::string schema = FixturePath("db/schema.sql");
  std::string out;

  Outcome result{false, ""};
  bool ran = Cli(root, {"init", "smoke"}) == 0 &&
             Cli(root, {"ingest", "--schema", schema, "--queries",
                        FixturePath("invertible/queries.sql")}) == 0 &&
             Cli(root, {"annotate", "--auto-accept-rank1"}) == 0 &&
             Cli(root, {"export", "--out", a}) == 0 &&
             Cli(root, {"eval", "--db", FixturePath("db"), "--out", report_path}) == 0 &&
             Cli(root, {"init", "again"}) == 0 &&
             Cli(root, {"ingest", "--schema", schema, "--queries", a, "--accept-references"}) ==
                 0 &&
             Cli(root, {"export", "--out", b}) == 0;
  if (!ran) {
    result.detail = "a CLI step failed";
  } else {
    auto report = json::parse(ReadFile(report_path));
    double accuracy = report.at("aggregates").at("execution_accuracy").get<double>();
    size_t items = report.at("items").size(), level5 = 0;
    for (const auto& item : report.at("items"))
      level5 += item.at("judgment").at("level").get<int>() == 5;
    bool identical = ReadFile(a) == ReadFile(b);
    std::ostringstream d;
    d << items << " items, execution accuracy " << accuracy << ", level 5 " << level5 << "/"
      << items << ", round trip " << (identical ? "byte-identical" : "differs");
    result = {items > 0 && accuracy == 1.0 && level5 == items && identical, d.str()};
  }
  fs::remove_all(dir);
  return result;
}

}  // namespace
}  // namespace benchforge

int main(int argc, char** argv) {
  using namespace benchforge;
  std::vector<Criterion> criteria = {
      {"decomposition_soundness", 10, DecompositionSoundness},
      {"parser_round_trip", 5, ParserRoundTrip},
      {"retrieval_exactness", 30, RetrievalExactness},
      {"candidate_contract", 0, CandidateContract},
      {"state_machine_fuzz", 0, StateFuzz},
      {"rubric_decision_procedure", 0, RubricSuite},
      {"execution_accuracy_semantics", 0, ExecAccuracy},
      {"metric_golden_values", 0, MetricGoldens},
      {"end_to_end_smoke", 60, EndToEndSmoke},
  };
  std::string only = argc > 1 ? argv[1] : "";
  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && only != c.name) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs >= c.budget_seconds) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(c.budget_seconds)) +
                  " s budget";
    }
    std::printf("%s %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures;
}
