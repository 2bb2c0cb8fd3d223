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
#include "benchforge/evaluation/database.h"

#include <fstream>

#include "benchforge/sql/decompose.h"
#include "benchforge/sql/parser.h"
#include "benchforge/evaluation/metrics.h"
#include "gtest/gtest.h"
#include "tests/support/fixtures.h"

namespace benchforge::evaluation {
namespace {

const Database& FixtureDb() {
  static const Database db = Database::OpenFixture(testing::FixturePath("db"));
  return db;
}

TEST(DatabaseTest, SelectOne) {
  ResultTable t = FixtureDb().Execute("SELECT 1");
  ASSERT_EQ(t.column_names.size(), 1u);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(std::get<int64_t>(t.rows[0][0]), 1);
  EXPECT_FALSE(t.ordered);
}

TEST(DatabaseTest, ErrorCategories) {
  auto category = [](const char* q) {
    try {
      FixtureDb().Execute(q);
    } catch (const ExecError& e) {
      return e.category();
    }
    ADD_FAILURE() << q << " executed";
    return ExecErrorCategory::kRuntime;
  };
  EXPECT_EQ(category("SELECT * FROM no_such_table"), ExecErrorCategory::kUnknownObject);
  EXPECT_EQ(category("SELECT nope FROM students"), ExecErrorCategory::kUnknownObject);
  EXPECT_EQ(category("SELEC 1"), ExecErrorCategory::kSyntax);
  EXPECT_EQ(category("SELECT 1; SELECT 2"), ExecErrorCategory::kSyntax);
  EXPECT_EQ(category("DELETE FROM students"), ExecErrorCategory::kRuntime);
}

TEST(DatabaseTest, NullsAndTypes) {
  ResultTable t = FixtureDb().Execute(
      "SELECT gpa FROM students WHERE student_id IN (13, 26) ORDER BY student_id");
  EXPECT_TRUE(t.ordered);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<std::monostate>(t.rows[0][0]));
  EXPECT_TRUE(std::holds_alternative<std::monostate>(t.rows[1][0]));
  ResultTable r = FixtureDb().Execute("SELECT budget FROM departments WHERE dept_id = 1");
  EXPECT_EQ(std::get<double>(r.rows[0][0]), 1200000.0);
}

// Row count of corpus query F03 (gpa >= 3.5) recomputed by scanning the CSV.
TEST(DatabaseTest, F03MatchesCsvScan) {
  auto records = ParseCsv(testing::ReadFile(testing::FixturePath("db/students.csv")));
  ASSERT_FALSE(records.empty());
  size_t gpa_col = 0;
  while (records[0][gpa_col] != "gpa") ++gpa_col;
  size_t expected = 0;
  for (size_t i = 1; i < records.size(); ++i) {
    const std::string& v = records[i][gpa_col];
    if (!v.empty() && std::stod(v) >= 3.5) ++expected;
  }
  auto corpus = testing::LoadDefaultCorpus();
  ResultTable t = FixtureDb().Execute(testing::FindQuery(corpus, "F03").sql);
  EXPECT_EQ(t.rows.size(), expected);
  EXPECT_GT(expected, 0u);
}

TEST(DatabaseTest, CsvQuoting) {
  auto r = ParseCsv("a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\n,\n");
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[1][0], "x,1");
  EXPECT_EQ(r[1][1], "say \"hi\"");
  EXPECT_EQ(r[2], (std::vector<std::string>{"", ""}));
}

TEST(DatabaseTest, MissingFixture) {
  EXPECT_THROW(Database::OpenFixture("/nonexistent"), Error);
  EXPECT_THROW(Database::OpenFile("/nonexistent.db"), Error);
}

// plan_to_sql(decompose(q)) returns the same multiset as q for every
// uncorrelated nested corpus query.
TEST(DatabaseTest, DecompositionSoundness) {
  auto catalog = sql::LoadSchema(testing::ReadFile(testing::FixturePath("db/schema.sql")));
  int checked = 0;
  for (const auto& q : testing::LoadDefaultCorpus()) {
    if (q.klass != "nested") continue;
    SCOPED_TRACE(q.name);
    auto plan = sql::Decompose(sql::ParseSql(q.sql), &catalog);
    std::string rewritten = sql::PlanToSql(plan);
    ResultTable a = FixtureDb().Execute(q.sql);
    ResultTable b = FixtureDb().Execute(rewritten);
    EXPECT_TRUE(CompareResults(b, a).multiset_equal) << rewritten;
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

}  // namespace
}  // namespace benchforge::evaluation
