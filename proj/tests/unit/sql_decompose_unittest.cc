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
#include "benchforge/sql/decompose.h"

#include <set>

#include "benchforge/error.h"
#include "benchforge/sql/analysis.h"
#include "benchforge/sql/parser.h"
#include "benchforge/sql/render.h"
#include "gtest/gtest.h"
#include "tests/support/fixtures.h"

namespace benchforge::sql {
namespace {

SchemaCatalog FixtureCatalog() {
  return LoadSchema(testing::ReadFile(testing::FixturePath("db/schema.sql")));
}

ErrorCode CodeOf(const std::string& text, const SchemaCatalog* catalog = nullptr) {
  try {
    Decompose(ParseSql(text), catalog);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

TEST(DecomposeTest, SingleInSubquery) {
  auto plan = Decompose(ParseSql("SELECT a FROM t WHERE a IN (SELECT b FROM u)"));
  ASSERT_EQ(plan.steps.size(), 1u);
  EXPECT_EQ(plan.steps[0].cte_name, "step_1");
  EXPECT_EQ(RenderQuery(plan.steps[0].subquery), "SELECT b FROM u");
  EXPECT_EQ(RenderQuery(plan.final),
            "SELECT a FROM t WHERE a IN (SELECT b FROM step_1)");
  EXPECT_EQ(PlanToSql(plan),
            "WITH step_1 AS (SELECT b FROM u) SELECT a FROM t WHERE a IN "
            "(SELECT b FROM step_1)");
}

TEST(DecomposeTest, FlatIsNotNested) {
  EXPECT_EQ(CodeOf("SELECT a FROM t"), ErrorCode::kNotNested);
  EXPECT_EQ(CodeOf("WITH x AS (SELECT 1) SELECT * FROM x"), ErrorCode::kNotNested);
}

TEST(DecomposeTest, CorrelatedIsRefused) {
  EXPECT_EQ(CodeOf("SELECT s.a FROM t AS s WHERE EXISTS "
                   "(SELECT 1 FROM u WHERE u.b = s.a)"),
            ErrorCode::kCorrelatedSubquery);
  // Qualifier bound inside the subquery is local.
  EXPECT_NO_THROW(Decompose(ParseSql(
      "SELECT a FROM t WHERE EXISTS (SELECT 1 FROM u WHERE u.b = 1)")));
}

TEST(DecomposeTest, UnqualifiedCorrelationNeedsCatalog) {
  SchemaCatalog c = LoadSchema("CREATE TABLE t (a INT); CREATE TABLE u (b INT);");
  const char* q = "SELECT a FROM t WHERE EXISTS (SELECT 1 FROM u WHERE b = a)";
  EXPECT_NO_THROW(Decompose(ParseSql(q)));
  EXPECT_EQ(CodeOf(q, &c), ErrorCode::kCorrelatedSubquery);
  EXPECT_NO_THROW(Decompose(
      ParseSql("SELECT a FROM t WHERE a > (SELECT MAX(b) FROM u WHERE b < "
               "CURRENT_DATE)"),
      &c));
}

TEST(DecomposeTest, RecursiveCteUnsupported) {
  EXPECT_THROW(Decompose(ParseSql(
                   "WITH RECURSIVE r AS (SELECT 1 AS n UNION ALL SELECT n + 1 "
                   "FROM r WHERE n < 3) SELECT * FROM t WHERE a IN (SELECT n FROM r)")),
               UnsupportedConstruct);
}

TEST(DecomposeTest, InnermostFirstWithDependencies) {
  auto corpus = testing::LoadDefaultCorpus();
  auto plan = Decompose(ParseSql(testing::FindQuery(corpus, "F07").sql));
  ASSERT_EQ(plan.steps.size(), 2u);
  EXPECT_EQ(RenderQuery(plan.steps[0].subquery), "SELECT MAX(start_year) FROM terms");
  EXPECT_TRUE(plan.steps[0].depends_on.empty());
  EXPECT_EQ(RenderQuery(plan.steps[1].subquery),
            "SELECT code FROM terms WHERE start_year = (SELECT * FROM step_1)");
  EXPECT_EQ(plan.steps[1].depends_on, std::set<std::string>{"step_1"});
  EXPECT_EQ(RenderQuery(plan.final),
            "SELECT name FROM students WHERE entry_term IN (SELECT code FROM step_2)");
}

TEST(DecomposeTest, IndependentStepsInTextualOrder) {
  auto plan = Decompose(ParseSql(
      "SELECT a FROM t WHERE a > (SELECT MIN(b) FROM u) AND a < (SELECT MAX(c) FROM v)"));
  ASSERT_EQ(plan.steps.size(), 2u);
  EXPECT_EQ(RenderQuery(plan.steps[0].subquery), "SELECT MIN(b) FROM u");
  EXPECT_EQ(RenderQuery(plan.steps[1].subquery), "SELECT MAX(c) FROM v");
  EXPECT_EQ(PlanToSql(plan),
            "WITH step_1 AS (SELECT MIN(b) FROM u), step_2 AS (SELECT MAX(c) FROM v) "
            "SELECT a FROM t WHERE a > (SELECT * FROM step_1) AND a < (SELECT * FROM step_2)");
}

TEST(DecomposeTest, DerivedTableKeepsAlias) {
  auto plan = Decompose(ParseSql(
      "SELECT x.n FROM (SELECT COUNT(*) AS n FROM t) AS x"));
  EXPECT_EQ(RenderQuery(plan.final), "SELECT x.n FROM step_1 AS x");
}

TEST(DecomposeTest, ExistingCtesBecomeSteps) {
  auto plan = Decompose(ParseSql(
      "WITH big AS (SELECT id FROM t WHERE a > 5) SELECT big.id FROM big "
      "WHERE big.id IN (SELECT id FROM u)"));
  ASSERT_EQ(plan.steps.size(), 2u);
  EXPECT_EQ(RenderQuery(plan.steps[0].subquery), "SELECT id FROM t WHERE a > 5");
  EXPECT_EQ(RenderQuery(plan.final),
            "SELECT big.id FROM step_1 AS big WHERE big.id IN (SELECT id FROM step_2)");
}

// Properties over every uncorrelated nested corpus query.
TEST(DecomposeTest, CorpusProperties) {
  SchemaCatalog catalog = FixtureCatalog();
  auto corpus = testing::LoadDefaultCorpus();
  int nested = 0;
  for (const auto& q : corpus) {
    SCOPED_TRACE(q.name);
    SqlAst ast = ParseSql(q.sql);
    if (q.klass == "correlated") {
      EXPECT_EQ(CodeOf(q.sql, &catalog), ErrorCode::kCorrelatedSubquery);
      continue;
    }
    if (q.klass != "nested") continue;
    ++nested;
    DecompositionPlan plan = Decompose(ast, &catalog);
    std::set<std::string> seen;
    for (size_t i = 0; i < plan.steps.size(); ++i) {
      const auto& step = plan.steps[i];
      EXPECT_EQ(step.cte_name, "step_" + std::to_string(i + 1));
      EXPECT_EQ(ResidualDepth(step.subquery), 0);
      for (const auto& dep : step.depends_on) EXPECT_TRUE(seen.count(dep)) << dep;
      seen.insert(step.cte_name);
    }
    EXPECT_EQ(ResidualDepth(plan.final), 0);
    EXPECT_LE(NestingDepth(plan.final), NestingDepth(ast));

    // Table closure: base tables of steps and final equal the original's.
    std::set<std::string> before, after;
    for (const auto& t : ReferencedTables(ast)) before.insert(t);
    auto add = [&](const Query& sub) {
      for (const auto& t : ReferencedTables(sub))
        if (!seen.count(t)) after.insert(t);
    };
    for (const auto& step : plan.steps) add(step.subquery);
    add(plan.final);
    EXPECT_EQ(before, after);

    // The single-statement form parses and persists losslessly.
    SqlAst combined = ParseSql(PlanToSql(plan));
    EXPECT_EQ(RenderSql(combined), PlanToSql(plan));
    EXPECT_EQ(PlanFromJson(PlanToJson(plan), Dialect::kGeneric), plan);
  }
  EXPECT_GE(nested, 20);
}

}  // namespace
}  // namespace benchforge::sql
