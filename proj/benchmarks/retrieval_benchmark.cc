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

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "benchforge/retrieval/embedding.h"
#include "benchforge/retrieval/index.h"

namespace benchforge {
namespace {

std::string RandomText(std::mt19937_64& rng) {
  static const char* kWords[] = {"select", "from", "where", "students", "terms",  "count",
                                 "name",   "gpa",  "join",  "order",    "group",  "avg"};
  std::string s;
  int n = 2 + static_cast<int>(rng() % 8);
  for (int i = 0; i < n; ++i) s += std::string(kWords[rng() % 12]) + " ";
  return s;
}

void BM_Embed(benchmark::State& state) {
  retrieval::HashTrigramEmbedder embedder;
  std::string text = "SELECT name, gpa FROM students WHERE gpa > 3.5 ORDER BY gpa DESC";
  for (auto _ : state) benchmark::DoNotOptimize(embedder.Embed(text));
}
BENCHMARK(BM_Embed);

void BM_TopK(benchmark::State& state) {
  std::mt19937_64 rng(3);
  retrieval::HashTrigramEmbedder embedder;
  retrieval::VectorIndex index;
  for (int64_t i = 0; i < state.range(0); ++i) {
    std::string t = RandomText(rng);
    index.Add("e" + std::to_string(i), retrieval::EntryKind::kExample, t,
              retrieval::ExamplePair{}, embedder.Embed(t));
  }
  auto query = embedder.Embed(RandomText(rng));
  for (auto _ : state) benchmark::DoNotOptimize(index.TopK(query, 10));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TopK)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace
}  // namespace benchforge
