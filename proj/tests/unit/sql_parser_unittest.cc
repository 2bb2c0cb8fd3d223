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
#include "benchforge/sql/parser.h"

#include <string>

#include "benchforge/error.h"
#include "benchforge/sql/analysis.h"
#include "benchforge/sql/render.h"
#include "gtest/gtest.h"
#include "tests/support/fixtures.h"

namespace benchforge::sql {
namespace {

std::string Canon(const std::string& text, Dialect d = Dialect::kGeneric) {
  return RenderSql(ParseSql(text, d));
}

TEST(ParserTest, SelectOne) {
  SqlAst ast = ParseSql("SELECT 1");
  const auto& core = std::get<SelectCore>(ast.root.body.node);
  ASSERT_EQ(core.items.size(), 1u);
  EXPECT_TRUE(core.from.empty());
  EXPECT_EQ(NestingDepth(ast), 0);
}

TEST(ParserTest, MalformedKeywordReportsToken) {
  try {
    ParseSql("SELEC 1");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.token(), "SELEC");
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 1);
  }
}

TEST(ParserTest, SyntaxErrorLocation) {
  try {
    ParseSql("SELECT a\nFROM t\nWHERE a = = 1");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 11);
    EXPECT_EQ(e.token(), "=");
  }
}

TEST(ParserTest, TruncatedInput) {
  EXPECT_THROW(ParseSql("SELECT a FROM"), SyntaxError);
  EXPECT_THROW(ParseSql("SELECT (a FROM t"), SyntaxError);
  EXPECT_THROW(ParseSql("SELECT a FROM t WHERE"), SyntaxError);
  EXPECT_THROW(ParseSql("SELECT 'open"), SyntaxError);
}

TEST(ParserTest, TrailingGarbage) {
  EXPECT_THROW(ParseSql("SELECT a FROM t; SELECT b FROM u"), SyntaxError);
  EXPECT_NO_THROW(ParseSql("SELECT a FROM t;"));
}

TEST(ParserTest, DmlIsUnsupported) {
  try {
    ParseSql("UPDATE t SET a = 1");
    FAIL() << "expected UnsupportedConstruct";
  } catch (const UnsupportedConstruct& e) {
    EXPECT_NE(e.construct().find("UPDATE"), std::string::npos);
  }
  EXPECT_THROW(ParseSql("CREATE TABLE t (a INT)"), UnsupportedConstruct);
  EXPECT_THROW(ParseSql("delete from t"), UnsupportedConstruct);
}

TEST(ParserTest, CommentsStrippedLiteralsVerbatim) {
  EXPECT_EQ(Canon("select /* c */ 'It''s', 1.50e3 -- tail\nfrom t"),
            "SELECT 'It''s', 1.50e3 FROM t");
}

TEST(ParserTest, KeywordCaseAndWhitespace) {
  EXPECT_EQ(Canon("select  a from t"), "SELECT a FROM t");
  EXPECT_EQ(Canon("SELECT 1"), "SELECT 1");
  EXPECT_EQ(Canon("select a   b from t  x"), "SELECT a AS b FROM t AS x");
}

TEST(ParserTest, IdentifiersKeepCase) {
  EXPECT_EQ(Canon("select Name from Students s"),
            "SELECT Name FROM Students AS s");
}

TEST(ParserTest, JoinsRender) {
  EXPECT_EQ(Canon("select * from a left join b on a.x=b.x cross join c"),
            "SELECT * FROM a LEFT JOIN b ON a.x = b.x CROSS JOIN c");
  EXPECT_EQ(Canon("select * from a natural join b join c using (k, j)"),
            "SELECT * FROM a NATURAL JOIN b JOIN c USING (k, j)");
  EXPECT_EQ(Canon("select * from a full outer join b on 1=1"),
            "SELECT * FROM a FULL OUTER JOIN b ON 1 = 1");
}

TEST(ParserTest, SetOperationsAreLeftAssociative) {
  SqlAst ast = ParseSql("select 1 union select 2 except select 3");
  const auto& top = *std::get<Box<SetOperation>>(ast.root.body.node);
  EXPECT_EQ(top.op, SetOpKind::kExcept);
  EXPECT_TRUE(std::holds_alternative<Box<SetOperation>>(top.lhs.node));
}

TEST(ParserTest, OperatorPrecedence) {
  SqlAst ast = ParseSql("select a from t where a = 1 or b = 2 and c = 3");
  const auto& core = std::get<SelectCore>(ast.root.body.node);
  const auto& top = std::get<BinaryOp>(core.where->node);
  EXPECT_EQ(top.op, "OR");
  EXPECT_EQ(std::get<BinaryOp>(top.rhs->node).op, "AND");

  SqlAst arith = ParseSql("select 1 + 2 * 3 || 'x'");
  const auto& item = std::get<SelectCore>(arith.root.body.node).items[0];
  EXPECT_EQ(std::get<BinaryOp>(item.expr.node).op, "+");
}

TEST(ParserTest, WindowClauseIsOpaque) {
  EXPECT_EQ(Canon("select rank() over (partition by d order by s desc rows "
                  "between unbounded preceding and current row) from t"),
            "SELECT rank() OVER (PARTITION BY d ORDER BY s DESC ROWS BETWEEN "
            "UNBOUNDED PRECEDING AND CURRENT ROW) FROM t");
}

TEST(ParserTest, CteAndLimitForms) {
  EXPECT_EQ(Canon("with x as (select 1 as a) select a from x limit 2 offset 1"),
            "WITH x AS (SELECT 1 AS a) SELECT a FROM x LIMIT 2 OFFSET 1");
  EXPECT_EQ(Canon("select a from t limit 3, 4"), "SELECT a FROM t LIMIT 3, 4");
}

TEST(ParserTest, DialectQuirks) {
  EXPECT_EQ(Canon("select a from t fetch first 5 rows only",
                  Dialect::kMitWarehouse),
            "SELECT a FROM t FETCH FIRST 5 ROWS ONLY");
  EXPECT_EQ(Canon("select a from t minus select a from u",
                  Dialect::kMitWarehouse),
            "SELECT a FROM t MINUS SELECT a FROM u");
  EXPECT_THROW(ParseSql("select a from t minus select a from u",
                        Dialect::kSqlite),
               UnsupportedConstruct);
  EXPECT_THROW(ParseSql("select `a` from t", Dialect::kMitWarehouse),
               UnsupportedConstruct);
  EXPECT_EQ(Canon("select `a`, [b] from t", Dialect::kSqlite),
            "SELECT `a`, [b] FROM t");
}

TEST(ParserTest, DialectNames) {
  for (Dialect d : {Dialect::kGeneric, Dialect::kMitWarehouse, Dialect::kSqlite})
    EXPECT_EQ(DialectFromName(DialectName(d)), d);
  EXPECT_FALSE(DialectFromName("oracle9").has_value());
}

TEST(ParserTest, LeadingKeyword) {
  EXPECT_EQ(LeadingKeyword("  -- c\n (select 1)"), "SELECT");
  EXPECT_EQ(LeadingKeyword("insert into t values (1)"), "INSERT");
  EXPECT_EQ(LeadingKeyword("42"), "");
}

TEST(ParserTest, DeepNestingIsBounded) {
  std::string deep(1000, '(');
  deep = "SELECT " + deep + "1" + std::string(1000, ')');
  EXPECT_THROW(ParseSql(deep), Error);
}

TEST(ParserTest, F07Depth) {
  auto corpus = testing::LoadDefaultCorpus();
  const auto& f07 = testing::FindQuery(corpus, "F07");
  EXPECT_EQ(NestingDepth(ParseSql(f07.sql)), 2);
}

// Every fixture query round-trips, and the hand-counted depth annotated in
// the corpus matches the analysis.
TEST(ParserTest, CorpusRoundTripAndDepth) {
  auto corpus = testing::LoadDefaultCorpus();
  ASSERT_GE(corpus.size(), 50u);
  for (const auto& q : corpus) {
    SCOPED_TRACE(q.name);
    SqlAst first = ParseSql(q.sql);
    std::string text = RenderSql(first);
    SqlAst second = ParseSql(text);
    EXPECT_EQ(first, second) << text;
    EXPECT_EQ(RenderSql(second), text);
    if (q.depth) EXPECT_EQ(NestingDepth(first), *q.depth);
    if (q.klass == "flat") EXPECT_EQ(NestingDepth(first), 0);
  }
}

}  // namespace
}  // namespace benchforge::sql
