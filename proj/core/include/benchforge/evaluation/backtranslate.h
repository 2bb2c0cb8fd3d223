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

#ifndef BENCHFORGE_EVALUATION_BACKTRANSLATE_H_
#define BENCHFORGE_EVALUATION_BACKTRANSLATE_H_

#include <string>
#include <string_view>

#include "benchforge/generation/backend.h"
#include "benchforge/generation/prompt.h"
#include "benchforge/sql/schema.h"

namespace benchforge::evaluation {

// The prompt holds the catalog tables and the question, nothing else: no
// retrieved examples and no annotator guidance.
std::string BacktranslationPrompt(std::string_view nl, const sql::SchemaCatalog& catalog,
                                  std::string_view template_id =
                                      generation::kBacktranslateTemplate,
                                  const generation::TemplateRegistry& registry =
                                      generation::TemplateRegistry::Builtin());

// Body of the first fenced code block, else the trimmed text.
std::string StripSqlFence(std::string_view completion);

// First completion for the backtranslation prompt, fence stripped. Throws
// Error(kInvalidArgument) for blank |nl|, BackendError from the backend, and
// Error(kEmptyCompletion) when nothing came back.
std::string Backtranslate(std::string_view nl, const sql::SchemaCatalog& catalog,
                          generation::CompletionBackend& backend,
                          const generation::GenerationParams& params = {},
                          std::string_view template_id = generation::kBacktranslateTemplate,
                          const generation::TemplateRegistry& registry =
                              generation::TemplateRegistry::Builtin());

}  // namespace benchforge::evaluation

#endif  // BENCHFORGE_EVALUATION_BACKTRANSLATE_H_
