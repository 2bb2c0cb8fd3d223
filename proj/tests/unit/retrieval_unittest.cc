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
#include "benchforge/retrieval/retrieve.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "benchforge/error.h"
#include "gtest/gtest.h"

namespace benchforge::retrieval {
namespace {

class FakeTransport : public net::HttpTransport {
 public:
  net::HttpResponse response;
  std::vector<net::HttpRequest> requests;
  net::HttpResponse Post(const net::HttpRequest& r) override {
    requests.push_back(r);
    return response;
  }
};

std::set<std::string> Trigrams(const std::string& s) {
  std::set<std::string> out;
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
  for (size_t i = 0; i + 3 <= lower.size(); ++i) out.insert(lower.substr(i, 3));
  return out;
}

size_t Shared(const std::string& a, const std::string& b) {
  auto x = Trigrams(a), y = Trigrams(b);
  size_t n = 0;
  for (const auto& t : x) n += y.count(t);
  return n;
}

TEST(EmbeddingTest, EmptyTextIsZero) {
  HashTrigramEmbedder e;
  EmbeddingVector v = e.Embed("");
  EXPECT_TRUE(v.empty);
  EXPECT_EQ(v.dimension(), 256u);
  EXPECT_TRUE(std::all_of(v.values.begin(), v.values.end(), [](double x) { return x == 0; }));
}

TEST(EmbeddingTest, DeterministicAndNormalized) {
  HashTrigramEmbedder e;
  for (const char* s : {"a", "ab", "SELECT name FROM students", "x y z w"}) {
    EmbeddingVector v = e.Embed(s);
    EXPECT_EQ(v, e.Embed(s));
    double sq = 0;
    for (double x : v.values) sq += x * x;
    EXPECT_NEAR(std::sqrt(sq), 1.0, 1e-6);
  }
  EXPECT_EQ(e.Embed("SELECT A"), e.Embed("select a"));
}

// The shared-trigram counts order the pairs the same way the cosines do.
TEST(EmbeddingTest, SimilarSqlIsCloser) {
  HashTrigramEmbedder e;
  std::string q = "SELECT name FROM students";
  std::string near = "SELECT name FROM students WHERE year=2024";
  std::string far = "DELETE FROM devices";
  ASSERT_GT(Shared(q, near), Shared(q, far));
  EXPECT_GT(Cosine(e.Embed(q), e.Embed(near)), Cosine(e.Embed(q), e.Embed(far)));
}

TEST(EmbeddingTest, RemoteParsesAndNormalizes) {
  auto t = std::make_shared<FakeTransport>();
  t->response = {200, R"({"embedding": [3, 4]})", ""};
  RemoteEmbedder e("http://emb.local/embed", "tok", 2, t);
  EmbeddingVector v = e.Embed("hello");
  EXPECT_NEAR(v.values[0], 0.6, 1e-12);
  EXPECT_NEAR(v.values[1], 0.8, 1e-12);
  ASSERT_EQ(t->requests.size(), 1u);
  EXPECT_EQ(nlohmann::json::parse(t->requests[0].body)["input"], "hello");
  EXPECT_EQ(t->requests[0].headers[0].second, "Bearer tok");
}

TEST(EmbeddingTest, RemoteFailuresAndFallback) {
  auto t = std::make_shared<FakeTransport>();
  t->response = {503, "", ""};
  RemoteEmbedder bad("http://emb.local/embed", "", 16, t);
  try {
    bad.Embed("x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmbedderUnavailable);
  }
  t->response = {200, R"({"embedding": [1]})", ""};
  EXPECT_THROW(bad.Embed("x"), Error);  // wrong dimension

  std::vector<std::string> reasons;
  FallbackEmbedder fb(std::make_unique<RemoteEmbedder>("http://emb.local/embed", "", 16, t),
                      [&](const std::string& r) { reasons.push_back(r); });
  EmbeddingVector v = fb.Embed("some text");
  EXPECT_EQ(v, HashTrigramEmbedder(16).Embed("some text"));
  EXPECT_EQ(fb.fallback_count(), 1u);
  EXPECT_EQ(reasons.size(), 1u);
}

TEST(IndexTest, EmptyIndex) {
  VectorIndex index;
  HashTrigramEmbedder e;
  EXPECT_TRUE(index.TopK(e.Embed("x y z"), 3).empty());
}

TEST(IndexTest, SelfSimilarityFirst) {
  VectorIndex index;
  HashTrigramEmbedder e;
  std::vector<std::string> texts = {"SELECT a FROM t", "SELECT b FROM u WHERE b > 1",
                                    "SELECT name FROM students"};
  for (size_t i = 0; i < texts.size(); ++i)
    index.Add("e" + std::to_string(i), EntryKind::kExample, texts[i],
              ExamplePair{texts[i], "", ""}, e.Embed(texts[i]));
  auto hits = index.TopK(e.Embed(texts[1]), 3);
  ASSERT_EQ(hits.size(), 3u);
  EXPECT_EQ(hits[0].entry.entry_id, "e1");
  EXPECT_NEAR(hits[0].score, 1.0, 1e-6);
}

TEST(IndexTest, ZeroQueryReturnsOldest) {
  VectorIndex index(8);
  HashTrigramEmbedder e(8);
  for (int i = 0; i < 5; ++i)
    index.Add("e" + std::to_string(i), EntryKind::kExample, "t",
              ExamplePair{}, e.Embed("text " + std::to_string(i)));
  auto hits = index.TopK(e.Embed(""), 3);
  ASSERT_EQ(hits.size(), 3u);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(hits[i].entry.insertion_seq, i + 1);
    EXPECT_EQ(hits[i].score, 0.0);
  }
}

TEST(IndexTest, DuplicateIdAndDimension) {
  VectorIndex index(8);
  HashTrigramEmbedder e(8);
  index.Add("a", EntryKind::kExample, "x", ExamplePair{}, e.Embed("x"));
  EXPECT_THROW(index.Add("a", EntryKind::kExample, "x", ExamplePair{}, e.Embed("x")), Error);
  EXPECT_THROW(index.Add("b", EntryKind::kExample, "x", ExamplePair{},
                         HashTrigramEmbedder(4).Embed("x")),
               Error);
  EXPECT_THROW(index.TopK(e.Embed("x"), 0), Error);
  EXPECT_TRUE(index.Remove("a"));
  EXPECT_FALSE(index.Remove("a"));
}

// Exhaustive comparison against an independent brute-force ranking, with
// duplicated texts to exercise tie-breaking.
TEST(IndexTest, MatchesBruteForce) {
  std::mt19937 rng(42);
  HashTrigramEmbedder e;
  VectorIndex index;
  std::vector<std::string> texts;
  std::vector<EmbeddingVector> vecs;
  auto random_text = [&] {
    static const char* words[] = {"select", "from", "where", "students", "terms",
                                  "count", "name", "gpa", "join", "order"};
    std::string s;
    int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) s += std::string(words[rng() % 10]) + " ";
    return s;
  };
  for (int i = 0; i < 300; ++i) {
    std::string t = (i % 7 == 3) ? texts[rng() % texts.size()] : random_text();
    texts.push_back(t);
    vecs.push_back(e.Embed(t));
    index.Add(std::to_string(i), i % 2 ? EntryKind::kExample : EntryKind::kTableSignature,
              t, ExamplePair{}, vecs.back());
  }
  for (int q = 0; q < 30; ++q) {
    EmbeddingVector query = e.Embed(random_text());
    for (size_t k : {1u, 3u, 10u}) {
      std::vector<std::pair<double, int>> brute;
      for (int i = 0; i < 300; ++i) {
        if (i % 2 == 0) continue;
        double dot = 0;
        for (size_t d = 0; d < 256; ++d) dot += query.values[d] * vecs[i].values[d];
        brute.emplace_back(dot, i);
      }
      std::stable_sort(brute.begin(), brute.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      auto hits = index.TopK(query, k, EntryKind::kExample);
      ASSERT_EQ(hits.size(), k);
      for (size_t r = 0; r < k; ++r) {
        EXPECT_EQ(hits[r].entry.entry_id, std::to_string(brute[r].second));
        EXPECT_EQ(hits[r].score, brute[r].first);
      }
    }
  }
}

sql::SchemaCatalog FiveTables() {
  return sql::LoadSchema(
      "CREATE TABLE t (id INT, a INT); CREATE TABLE u (id INT, b INT);"
      "CREATE TABLE students (student_id INT, name TEXT, gpa REAL);"
      "CREATE TABLE terms (code TEXT, start_year INT);"
      "CREATE TABLE devices (serial TEXT, owner TEXT);");
}

TEST(RetrieveTest, ColdStartAndSelfRetrieval) {
  VectorIndex index;
  HashTrigramEmbedder e;
  EXPECT_TRUE(RetrieveExamples(index, e, "SELECT 1", 3).empty());
  for (int i = 0; i < 20; ++i) {
    std::string sql = "SELECT c" + std::to_string(i) + " FROM t WHERE a > " + std::to_string(i);
    AddExample(index, e, {sql, "description " + std::to_string(i), "item" + std::to_string(i)},
               ExampleEmbedding::kSql);
  }
  for (int i = 0; i < 20; ++i) {
    std::string sql = "select c" + std::to_string(i) + "  from t where a > " + std::to_string(i);
    auto hits = RetrieveExamples(index, e, sql, 1);
    ASSERT_EQ(hits.size(), 1u);
    EXPECT_EQ(hits[0].item_id, "item" + std::to_string(i));
  }
  EXPECT_EQ(RetrieveExamples(index, e, "SELECT c3 FROM t", 3).size(), 3u);
}

TEST(RetrieveTest, ReAddReplaces) {
  VectorIndex index;
  HashTrigramEmbedder e;
  AddExample(index, e, {"SELECT a FROM t", "old", "i1"}, ExampleEmbedding::kSql);
  AddExample(index, e, {"SELECT a FROM t", "new", "i1"}, ExampleEmbedding::kSqlAndNl);
  EXPECT_EQ(index.size(), 1u);
  EXPECT_EQ(RetrieveExamples(index, e, "SELECT a FROM t", 3)[0].nl, "new");
}

TEST(RetrieveTest, SchemaContextParsePath) {
  HashTrigramEmbedder e;
  auto ctx = RetrieveSchemaContext("SELECT * FROM t JOIN u ON t.id = u.id",
                                   FiveTables(), nullptr, e, 2);
  EXPECT_FALSE(ctx.fallback);
  ASSERT_EQ(ctx.tables.size(), 2u);
  EXPECT_EQ(ctx.tables[0].name, "t");
  EXPECT_EQ(ctx.tables[1].name, "u");
}

TEST(RetrieveTest, SchemaContextFallbackMatchesBruteForce) {
  HashTrigramEmbedder e;
  auto catalog = FiveTables();
  std::string garbage = "students gpa name ??? )(";
  auto ctx = RetrieveSchemaContext(garbage, catalog, nullptr, e, 2);
  EXPECT_TRUE(ctx.fallback);
  ASSERT_EQ(ctx.tables.size(), 2u);

  std::vector<std::pair<double, std::string>> brute;
  for (const auto& t : catalog.tables())
    brute.emplace_back(Cosine(e.Embed(garbage), e.Embed(TableSignature(t))), t.name);
  std::stable_sort(brute.begin(), brute.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  EXPECT_EQ(ctx.tables[0].name, brute[0].second);
  EXPECT_EQ(ctx.tables[1].name, brute[1].second);
  EXPECT_EQ(ctx.tables[0].name, "students");

  VectorIndex index;
  AddTableSignatures(index, e, catalog);
  auto indexed = RetrieveSchemaContext(garbage, catalog, &index, e, 2);
  EXPECT_EQ(indexed.tables, ctx.tables);
}

TEST(RetrieveTest, SchemaContextUnknownTableFallsBack) {
  HashTrigramEmbedder e;
  auto ctx = RetrieveSchemaContext("SELECT serial FROM gadgets", FiveTables(), nullptr, e, 1);
  EXPECT_TRUE(ctx.fallback);
  EXPECT_NE(ctx.reason.find("gadgets"), std::string::npos);
  EXPECT_EQ(ctx.tables.size(), 1u);
  EXPECT_FALSE(RetrieveSchemaContext("SELECT 1", FiveTables(), nullptr, e, 3).tables.empty());
}

}  // namespace
}  // namespace benchforge::retrieval
