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

#include "benchforge/generation/generate.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "benchforge/error.h"
#include "benchforge/sql/render.h"

namespace benchforge::generation {
namespace {

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

GenerationResult Run(std::string prompt, const GenerationParams& params,
                     CompletionBackend& backend, CandidateOrigin origin) {
  params.Validate();
  const size_t n = static_cast<size_t>(params.n_candidates);
  GenerationResult result;
  result.prompt = std::move(prompt);
  result.prompt_hash = PromptHash(result.prompt);

  std::vector<std::string> texts;
  std::vector<std::string> collisions;
  std::set<std::string> keys;
  auto take = [&](const std::vector<std::string>& batch, size_t limit) {
    for (size_t i = 0; i < batch.size() && i < limit; ++i) {
      std::string t = Trim(batch[i]);
      if (t.empty()) continue;
      if (texts.size() < n && keys.insert(NormalizeCandidateText(t)).second) {
        texts.push_back(std::move(t));
      } else {
        collisions.push_back(std::move(t));
      }
    }
  };

  take(backend.Complete(result.prompt, params.n_candidates, params), n);
  if (texts.size() < n) {
    GenerationParams again = params;
    again.seed = params.seed.value_or(0) + 1;
    size_t missing = n - texts.size();
    take(backend.Complete(result.prompt, static_cast<int>(missing), again), missing);
  }
  if (texts.empty()) {
    throw Error(ErrorCode::kEmptyCompletion,
                "backend returned only blank completions after 2 attempts");
  }
  const std::vector<std::string> pool = collisions.empty() ? texts : collisions;
  for (size_t i = 0, variant = 2; texts.size() < n; ++i, ++variant) {
    std::string t = pool[i % pool.size()] + " (variant " + std::to_string(variant) + ")";
    if (keys.insert(NormalizeCandidateText(t)).second) texts.push_back(std::move(t));
  }

  std::string model = backend.model_id(params);
  for (size_t i = 0; i < n; ++i) {
    Candidate c;
    c.candidate_id = "c" + std::to_string(i + 1);
    c.text = std::move(texts[i]);
    c.origin = origin;
    c.model_id = model;
    c.prompt_hash = result.prompt_hash;
    result.candidates.push_back(std::move(c));
  }
  return result;
}

}  // namespace

std::string NormalizeCandidateText(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

GenerationResult GenerateCandidates(const PromptContext& ctx, const GenerationParams& params,
                                    CompletionBackend& backend, std::string_view template_id,
                                    const TemplateRegistry& registry) {
  params.Validate();
  std::string prompt = BuildPrompt(ctx, template_id, registry);
  return Run(std::move(prompt), params, backend,
             ctx.mode == PromptMode::kMerge ? CandidateOrigin::kMerged
                                            : CandidateOrigin::kGenerated);
}

PromptContext MergeContext(const sql::DecompositionPlan& plan,
                           const std::vector<PartDescription>& sub_nl, std::string original_sql,
                           std::vector<sql::TableDef> tables) {
  PromptContext ctx;
  ctx.mode = PromptMode::kMerge;
  ctx.target_sql = original_sql.empty() ? sql::PlanToSql(plan) : std::move(original_sql);
  ctx.tables = std::move(tables);
  std::vector<std::string> names;
  for (const auto& step : plan.steps) names.push_back(step.cte_name);
  names.push_back("final");
  for (const auto& name : names) {
    auto it = std::find_if(sub_nl.begin(), sub_nl.end(),
                           [&](const PartDescription& p) { return p.name == name; });
    if (it == sub_nl.end() || Trim(it->nl).empty())
      throw Error(ErrorCode::kMissingSubDescription, "no accepted description for " + name);
    // One line per part; the prompt format is line oriented.
    std::string nl = Trim(it->nl);
    std::replace(nl.begin(), nl.end(), '\n', ' ');
    ctx.parts.push_back({name, std::move(nl)});
  }
  return ctx;
}

GenerationResult MergeDescriptions(const sql::DecompositionPlan& plan,
                                   const std::vector<PartDescription>& sub_nl,
                                   std::string original_sql, std::vector<sql::TableDef> tables,
                                   const GenerationParams& params, CompletionBackend& backend,
                                   std::string_view template_id,
                                   const TemplateRegistry& registry) {
  PromptContext ctx = MergeContext(plan, sub_nl, std::move(original_sql), std::move(tables));
  return GenerateCandidates(ctx, params, backend, template_id, registry);
}

}  // namespace benchforge::generation
