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
#include "benchforge/evaluation/metrics.h"

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "gtest/gtest.h"
#include "tests/support/fixtures.h"

namespace benchforge::evaluation {
namespace {

ResultTable Table(size_t cols, std::vector<std::vector<Value>> rows, bool ordered = false) {
  ResultTable t;
  for (size_t i = 0; i < cols; ++i) t.column_names.push_back("c" + std::to_string(i));
  t.rows = std::move(rows);
  t.ordered = ordered;
  return t;
}

TEST(MetricsTest, TokenizationLowercasesAndSplits) {
  EXPECT_EQ(MetricTokens("List the Students' names, by GPA-desc!"),
            (std::vector<std::string>{"list", "the", "students", "names", "by",
                                      "gpa", "desc"}));
  EXPECT_TRUE(MetricTokens(" ,;- ").empty());
}

TEST(MetricsTest, BleuIdentity) {
  EXPECT_DOUBLE_EQ(Bleu("show the names of all students", {"show the names of all students"}), 1.0);
  EXPECT_DOUBLE_EQ(Bleu("one", {"one"}), 1.0);
}

TEST(MetricsTest, BleuDisjointAndEmpty) {
  EXPECT_LT(Bleu("alpha beta gamma", {"delta epsilon zeta"}), 0.01);
  EXPECT_EQ(Bleu("", {"a b"}), 0.0);
  EXPECT_EQ(Bleu("a b", {}), 0.0);
}

// Hand calculation: candidate 3 tokens, reference 4. p1 = 3/3; smoothed
// p2 = (2+1)/(2+1), p3 = (1+1)/(1+1), p4 = (0+1)/(0+1); geometric mean 1.
// BP = exp(1 - 4/3).
TEST(MetricsTest, BleuGolden) {
  EXPECT_NEAR(Bleu("the cat sat", {"the cat sat down"}), 0.716531310573789, 1e-9);
}

TEST(MetricsTest, BleuMultipleReferencesUseClosestLength) {
  double single = Bleu("the cat sat", {"the cat sat down"});
  double multi = Bleu("the cat sat", {"the cat sat down", "a cat sat"});
  EXPECT_DOUBLE_EQ(multi, 1.0);
  EXPECT_GT(multi, single);
}

TEST(MetricsTest, RougeL) {
  EXPECT_NEAR(RougeL("a b c d", "a c d e"), 0.75, 1e-9);
  EXPECT_DOUBLE_EQ(RougeL("x y z", "x y z"), 1.0);
  EXPECT_EQ(RougeL("x y", "p q"), 0.0);
  EXPECT_EQ(RougeL("", "p q"), 0.0);
}

TEST(MetricsTest, BoundsOnRandomText) {
  std::mt19937 rng(7);
  const char* words[] = {"a", "b", "c", "d", "e", "f"};
  auto sentence = [&] {
    std::string s;
    int n = static_cast<int>(rng() % 9);
    for (int i = 0; i < n; ++i) s += std::string(words[rng() % 6]) + " ";
    return s;
  };
  for (int i = 0; i < 500; ++i) {
    std::string c = sentence(), r = sentence();
    double b = Bleu(c, {r}), l = RougeL(c, r);
    EXPECT_GE(b, 0.0);
    EXPECT_LE(b, 1.0);
    EXPECT_GE(l, 0.0);
    EXPECT_LE(l, 1.0);
    if (!MetricTokens(c).empty()) {
      EXPECT_NEAR(Bleu(c, {c}), 1.0, 1e-12);
      EXPECT_NEAR(RougeL(c, c), 1.0, 1e-12);
    }
  }
}

TEST(MetricsTest, ExactMatch) {
  EXPECT_TRUE(ExactMatch("select a from t", "SELECT a FROM t"));
  EXPECT_FALSE(ExactMatch("SELECT a FROM t", "SELECT b FROM t"));
  EXPECT_FALSE(ExactMatch("SELECT a AS x FROM t", "SELECT a AS y FROM t"));
  EXPECT_TRUE(ExactMatch("not sql  at all", "not sql at all"));
  EXPECT_FALSE(ExactMatch("not sql", "SELECT 1"));
}

TEST(MetricsTest, CompareResultsPermutationAndOrder) {
  ResultTable gold = Table(2, {{int64_t{1}, std::string("x")}, {int64_t{2}, std::string("y")}}, true);
  ResultTable swapped = Table(2, {{std::string("x"), int64_t{1}}, {std::string("y"), int64_t{2}}});
  ResultTable reversed = Table(2, {{int64_t{2}, std::string("y")}, {int64_t{1}, std::string("x")}});
  auto a = CompareResults(swapped, gold);
  EXPECT_TRUE(a.multiset_equal);
  EXPECT_TRUE(a.sequence_equal);
  auto b = CompareResults(reversed, gold);
  EXPECT_TRUE(b.multiset_equal);
  EXPECT_FALSE(b.sequence_equal);
  EXPECT_FALSE(CompareResults(Table(1, {{int64_t{1}}, {int64_t{2}}}), gold).multiset_equal);
}

TEST(MetricsTest, CompareResultsNumericNormalization) {
  ResultTable a = Table(1, {{int64_t{3}}, {0.1 + 0.2}});
  ResultTable b = Table(1, {{0.3}, {3.0}});
  EXPECT_TRUE(CompareResults(a, b).multiset_equal);
  ResultTable nulls = Table(1, {{std::monostate{}}});
  ResultTable zero = Table(1, {{int64_t{0}}});
  EXPECT_FALSE(CompareResults(nulls, zero).multiset_equal);
}

TEST(MetricsTest, CompareResultsSameColumnValues) {
  // Identical column signatures force a search over permutations.
  ResultTable gold = Table(2, {{int64_t{1}, int64_t{2}}, {int64_t{2}, int64_t{1}}});
  ResultTable pred = Table(2, {{int64_t{2}, int64_t{1}}, {int64_t{1}, int64_t{2}}});
  EXPECT_TRUE(CompareResults(pred, gold).sequence_equal);
}

TEST(MetricsTest, ExecAccuracyPairs) {
  Database db = Database::OpenFixture(testing::FixturePath("db"));
  auto pairs = nlohmann::json::parse(
      testing::ReadFile(testing::FixturePath("eval/exec_pairs.json")));
  ASSERT_EQ(pairs.size(), 10u);
  for (const auto& p : pairs) {
    SCOPED_TRACE(p["id"].get<std::string>());
    EXPECT_EQ(ExecAccuracyMatch(p["pred"].get<std::string>(),
                                p["gold"].get<std::string>(), db),
              p["expected"].get<bool>());
  }
}

}  // namespace
}  // namespace benchforge::evaluation
