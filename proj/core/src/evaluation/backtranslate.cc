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

#include "benchforge/evaluation/backtranslate.h"

#include <algorithm>
#include <cctype>

#include "benchforge/error.h"

namespace benchforge::evaluation {
namespace {

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::string BacktranslationPrompt(std::string_view nl, const sql::SchemaCatalog& catalog,
                                  std::string_view template_id,
                                  const generation::TemplateRegistry& registry) {
  generation::PromptContext ctx;
  ctx.mode = generation::PromptMode::kBacktranslate;
  ctx.tables = catalog.tables();
  ctx.question = Trim(nl);
  std::replace(ctx.question.begin(), ctx.question.end(), '\n', ' ');
  return generation::BuildPrompt(ctx, template_id, registry);
}

std::string StripSqlFence(std::string_view completion) {
  size_t open = completion.find("```");
  if (open != std::string_view::npos) {
    size_t body = completion.find('\n', open);
    if (body != std::string_view::npos) {
      size_t close = completion.find("```", body + 1);
      return Trim(completion.substr(body + 1, close == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : close - body - 1));
    }
  }
  return Trim(completion);
}

std::string Backtranslate(std::string_view nl, const sql::SchemaCatalog& catalog,
                          generation::CompletionBackend& backend,
                          const generation::GenerationParams& params,
                          std::string_view template_id,
                          const generation::TemplateRegistry& registry) {
  if (Trim(nl).empty())
    throw Error(ErrorCode::kInvalidArgument, "cannot backtranslate an empty description");
  std::string prompt = BacktranslationPrompt(nl, catalog, template_id, registry);
  for (const auto& text : backend.Complete(prompt, 1, params)) {
    std::string sql = StripSqlFence(text);
    if (!sql.empty()) return sql;
  }
  throw Error(ErrorCode::kEmptyCompletion, "backend returned no SQL");
}

}  // namespace benchforge::evaluation
