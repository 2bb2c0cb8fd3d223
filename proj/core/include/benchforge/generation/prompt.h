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

#ifndef BENCHFORGE_GENERATION_PROMPT_H_
#define BENCHFORGE_GENERATION_PROMPT_H_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "benchforge/retrieval/index.h"
#include "benchforge/sql/schema.h"

namespace benchforge::generation {

enum class PromptMode { kDescribe, kMerge, kBacktranslate };

std::string_view PromptModeName(PromptMode mode);

// One named part of a decomposed query and its accepted description. The
// final query uses the name "final".
struct PartDescription {
  std::string name;
  std::string nl;

  bool operator==(const PartDescription&) const = default;
};

struct PromptContext {
  PromptMode mode = PromptMode::kDescribe;
  std::string target_sql;
  std::vector<sql::TableDef> tables;
  std::vector<retrieval::ExamplePair> examples;
  std::vector<std::string> refinement_notes;
  std::vector<PartDescription> parts;  // kMerge only, steps then "final"
  std::string question;                // kBacktranslate only
};

// The configurable prose of a prompt. Section headings and their order are
// fixed by BuildPrompt so that prompts stay comparable across templates.
struct PromptTemplate {
  std::string id;  // "describe/v1"
  PromptMode mode = PromptMode::kDescribe;
  std::string task;
  std::string output;

  bool operator==(const PromptTemplate&) const = default;
};

class TemplateRegistry {
 public:
  // Registry holding describe/v1, merge/v1 and backtranslate/v1.
  static TemplateRegistry Builtin();

  // Throws Error(kDuplicateName) when the id is taken.
  void Add(PromptTemplate tmpl);

  // Throws Error(kUnknownTemplate).
  const PromptTemplate& Get(std::string_view id) const;

  bool Contains(std::string_view id) const;
  std::vector<std::string> ids() const;

 private:
  std::map<std::string, PromptTemplate, std::less<>> templates_;
};

// {"id", "mode": "describe"|"merge"|"backtranslate", "task", "output"}.
PromptTemplate TemplateFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const PromptTemplate& tmpl);

inline constexpr std::string_view kDescribeTemplate = "describe/v1";
inline constexpr std::string_view kMergeTemplate = "merge/v1";
inline constexpr std::string_view kBacktranslateTemplate = "backtranslate/v1";

// Deterministic prompt text. Sections, in order: task, "Tables:" (one
// "- name(col, ...)" line per table), then by mode:
//   describe: "Examples:" blocks, "Annotator guidance:" lines, fenced SQL
//   merge: "Parts:" lines ("name: description"), guidance, fenced SQL
//   backtranslate: "Question:" line only
// and finally the output instruction. Empty sections are omitted.
// Throws Error(kUnknownTemplate), or Error(kInvalidArgument) when the
// template's mode differs from ctx.mode.
std::string BuildPrompt(const PromptContext& ctx, std::string_view template_id,
                        const TemplateRegistry& registry = TemplateRegistry::Builtin());

// 16 hex digits of FNV-1a over the prompt bytes.
std::string PromptHash(std::string_view prompt);

}  // namespace benchforge::generation

#endif  // BENCHFORGE_GENERATION_PROMPT_H_
