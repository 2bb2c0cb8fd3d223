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

#include <string>

#include <benchmark/benchmark.h>

#include "benchforge/generation/backend.h"
#include "benchforge/generation/generate.h"
#include "benchforge/generation/prompt.h"

namespace benchforge {
namespace {

generation::PromptContext Context() {
  generation::PromptContext ctx;
  ctx.target_sql = "SELECT name, gpa FROM students WHERE gpa > 3.5 ORDER BY gpa DESC";
  sql::TableDef students;
  students.name = "students";
  for (const char* c : {"student_id", "name", "major_dept", "entry_term", "gpa"}) {
    sql::ColumnDef col;
    col.name = c;
    students.columns.push_back(col);
  }
  ctx.tables = {students};
  return ctx;
}

void BM_BuildPrompt(benchmark::State& state) {
  auto ctx = Context();
  for (auto _ : state)
    benchmark::DoNotOptimize(generation::BuildPrompt(ctx, generation::kDescribeTemplate));
}
BENCHMARK(BM_BuildPrompt);

void BM_MockGenerate(benchmark::State& state) {
  auto ctx = Context();
  generation::MockBackend mock;
  generation::GenerationParams params;
  params.seed = 7;
  params.n_candidates = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generation::GenerateCandidates(ctx, params, mock));
}
BENCHMARK(BM_MockGenerate)->Arg(4)->Arg(8);

}  // namespace
}  // namespace benchforge
