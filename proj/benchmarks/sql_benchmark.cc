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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "benchforge/sql/decompose.h"
#include "benchforge/sql/lexer.h"
#include "benchforge/sql/parser.h"
#include "benchforge/sql/render.h"
#include "benchforge/sql/schema.h"

namespace benchforge {
namespace {

constexpr char kNested[] =
    "SELECT s.name, s.gpa FROM students s WHERE s.major_dept IN "
    "(SELECT dept_id FROM departments WHERE building = 'North') AND s.gpa > "
    "(SELECT AVG(gpa) FROM students) ORDER BY s.gpa DESC LIMIT 10";

std::string ReadFixture(const std::string& name) {
  std::ifstream in(std::string(BENCHFORGE_FIXTURES_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sql::ParseSql(kNested));
}
BENCHMARK(BM_Parse);

void BM_Render(benchmark::State& state) {
  auto ast = sql::ParseSql(kNested);
  for (auto _ : state) benchmark::DoNotOptimize(sql::RenderSql(ast));
}
BENCHMARK(BM_Render);

void BM_Decompose(benchmark::State& state) {
  auto catalog = sql::LoadSchema(ReadFixture("db/schema.sql"));
  auto ast = sql::ParseSql(kNested);
  for (auto _ : state) benchmark::DoNotOptimize(sql::Decompose(ast, &catalog));
}
BENCHMARK(BM_Decompose);

void BM_SplitStatements(benchmark::State& state) {
  std::string corpus = ReadFixture("queries/corpus.sql");
  for (auto _ : state) benchmark::DoNotOptimize(sql::SplitStatements(corpus));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * corpus.size()));
}
BENCHMARK(BM_SplitStatements);

}  // namespace
}  // namespace benchforge
