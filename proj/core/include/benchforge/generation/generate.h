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

#ifndef BENCHFORGE_GENERATION_GENERATE_H_
#define BENCHFORGE_GENERATION_GENERATE_H_

#include <string>
#include <string_view>
#include <vector>

#include "benchforge/generation/backend.h"
#include "benchforge/generation/candidate.h"
#include "benchforge/generation/prompt.h"
#include "benchforge/sql/decompose.h"

namespace benchforge::generation {

struct GenerationResult {
  std::string prompt;
  std::string prompt_hash;
  std::vector<Candidate> candidates;  // ids c1..cn, created_at left empty
};

// Exactly params.n_candidates proposed candidates. Blank texts and
// duplicates (case and whitespace folded) are requested again once, with the
// seed advanced by one; remaining collisions keep their text plus a
// " (variant k)" suffix. Throws EmptyCompletion when no attempt produced
// text, BackendError from the backend, or UnknownTemplate.
GenerationResult GenerateCandidates(const PromptContext& ctx,
                                    const GenerationParams& params,
                                    CompletionBackend& backend,
                                    std::string_view template_id = kDescribeTemplate,
                                    const TemplateRegistry& registry =
                                        TemplateRegistry::Builtin());

// Merge-mode context with one part per step plus "final". Throws
// Error(kMissingSubDescription) naming the first part without text.
PromptContext MergeContext(const sql::DecompositionPlan& plan,
                           const std::vector<PartDescription>& sub_nl,
                           std::string original_sql, std::vector<sql::TableDef> tables);

// Builds the merge prompt from |sub_nl| (one entry per plan step plus
// "final") in plan order and returns merged candidates. Throws
// Error(kMissingSubDescription) naming the first part without a non-blank
// description.
GenerationResult MergeDescriptions(const sql::DecompositionPlan& plan,
                                   const std::vector<PartDescription>& sub_nl,
                                   std::string original_sql,
                                   std::vector<sql::TableDef> tables,
                                   const GenerationParams& params,
                                   CompletionBackend& backend,
                                   std::string_view template_id = kMergeTemplate,
                                   const TemplateRegistry& registry =
                                       TemplateRegistry::Builtin());

// Lowercase, whitespace collapsed, trimmed. The dedup key.
std::string NormalizeCandidateText(std::string_view text);

}  // namespace benchforge::generation

#endif  // BENCHFORGE_GENERATION_GENERATE_H_
