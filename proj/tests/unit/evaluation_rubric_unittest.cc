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
#include "benchforge/evaluation/rubric.h"

#include <nlohmann/json.hpp>

#include "benchforge/evaluation/metrics.h"
#include "gtest/gtest.h"
#include "tests/support/fixtures.h"

namespace benchforge::evaluation {
namespace {

class RubricTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    db_ = new Database(Database::OpenFixture(testing::FixturePath("db")));
    catalog_ = new sql::SchemaCatalog(
        sql::LoadSchema(testing::ReadFile(testing::FixturePath("db/schema.sql"))));
  }
  static void TearDownTestSuite() {
    delete db_;
    delete catalog_;
  }
  static Database* db_;
  static sql::SchemaCatalog* catalog_;
};

Database* RubricTest::db_ = nullptr;
sql::SchemaCatalog* RubricTest::catalog_ = nullptr;

TEST_F(RubricTest, CraftedCases) {
  auto cases = nlohmann::json::parse(
      testing::ReadFile(testing::FixturePath("eval/rubric_cases.json")));
  ASSERT_EQ(cases.size(), 15u);
  int per_level[6] = {};
  for (const auto& c : cases) {
    SCOPED_TRACE(c["id"].get<std::string>());
    std::string original = c["original"], regen = c["regen"];
    RubricJudgment j = ClassifyRubric(original, regen, *db_, *catalog_);
    EXPECT_EQ(j.level, c["level"].get<int>()) << j.rationale;
    EXPECT_TRUE(j.automatic);
    ++per_level[j.level];

    bool exec = ExecAccuracyMatch(regen, original, *db_);
    if (j.level == 5) EXPECT_TRUE(exec);
    if (j.level <= 3) EXPECT_FALSE(exec);
    EXPECT_EQ(ClassifyRubric(original, regen, *db_, *catalog_), j);
  }
  for (int level = 1; level <= 5; ++level) EXPECT_EQ(per_level[level], 3);
}

TEST_F(RubricTest, MalformedIsLevelOne) {
  RubricJudgment j = ClassifyRubric("SELECT 1", "SELEC", *db_, *catalog_);
  EXPECT_EQ(j.level, 1);
  EXPECT_EQ(j.reason, RubricReason::kExecutionFailed);
}

TEST_F(RubricTest, SameResultsThroughOtherTables) {
  RubricJudgment j = ClassifyRubric("SELECT COUNT(*) FROM departments",
                                    "SELECT COUNT(*) FROM terms WHERE start_year > 2019 AND start_year < 2023",
                                    *db_, *catalog_);
  EXPECT_EQ(j.level, 4);
  EXPECT_EQ(j.reason, RubricReason::kDifferentTables);
}

TEST_F(RubricTest, SuperfluousOrderBy) {
  RubricJudgment j = ClassifyRubric("SELECT code FROM terms",
                                    "SELECT code FROM terms ORDER BY code", *db_, *catalog_);
  EXPECT_EQ(j.level, 4);
  EXPECT_EQ(j.reason, RubricReason::kSuperfluousClause);
}

TEST_F(RubricTest, OverrideAndJson) {
  RubricJudgment o = OverrideRubric(3, "ann-1", "misses a filter");
  EXPECT_FALSE(o.automatic);
  EXPECT_EQ(RubricJudgmentFromJson(ToJson(o)), o);
  EXPECT_THROW(OverrideRubric(6, "ann-1", ""), Error);
  EXPECT_THROW(OverrideRubric(2, "", ""), Error);
}

}  // namespace
}  // namespace benchforge::evaluation
