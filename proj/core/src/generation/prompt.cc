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

#include "benchforge/generation/prompt.h"

#include <cstdint>
#include <cstdio>

#include "benchforge/error.h"
#include "benchforge/retrieval/retrieve.h"

namespace benchforge::generation {
namespace {

PromptMode PromptModeFromName(std::string_view name) {
  if (name == "describe") return PromptMode::kDescribe;
  if (name == "merge") return PromptMode::kMerge;
  if (name == "backtranslate") return PromptMode::kBacktranslate;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown prompt mode \"" + std::string(name) + "\"");
}

void AppendTables(std::string& out, const std::vector<sql::TableDef>& tables) {
  if (tables.empty()) return;
  out += "\n\nTables:";
  for (const auto& t : tables) out += "\n- " + retrieval::TableSignature(t);
}

void AppendGuidance(std::string& out, const std::vector<std::string>& notes) {
  if (notes.empty()) return;
  out += "\n";
  for (const auto& note : notes) out += "\nAnnotator guidance: " + note;
}

void AppendFencedSql(std::string& out, const std::string& sql) {
  out += "\n\nSQL:\n```sql\n" + sql + "\n```";
}

}  // namespace

std::string_view PromptModeName(PromptMode mode) {
  switch (mode) {
    case PromptMode::kDescribe: return "describe";
    case PromptMode::kMerge: return "merge";
    case PromptMode::kBacktranslate: return "backtranslate";
  }
  return "describe";
}

TemplateRegistry TemplateRegistry::Builtin() {
  TemplateRegistry r;
  r.Add({std::string(kDescribeTemplate), PromptMode::kDescribe,
         "You write benchmark questions for enterprise SQL logs. Describe what "
         "the SQL query below returns as one request a business user could "
         "have made. Cover every filter, grouping, ordering and limit, and "
         "use the table and column names listed under Tables.",
         "Reply with one plain sentence and nothing else."});
  r.Add({std::string(kMergeTemplate), PromptMode::kMerge,
         "The SQL query below was split into named parts. Each part has an "
         "approved description, and later parts refer to earlier ones by "
         "name. Combine the part descriptions into a single coherent "
         "description of the whole query.",
         "Reply with one plain sentence that does not mention the part names."});
  r.Add({std::string(kBacktranslateTemplate), PromptMode::kBacktranslate,
         "Write the SQL query that answers the question below, using only "
         "the tables listed.",
         "Reply with a single SQL query inside a ```sql fenced block."});
  return r;
}

void TemplateRegistry::Add(PromptTemplate tmpl) {
  if (templates_.count(tmpl.id))
    throw Error(ErrorCode::kDuplicateName, "template \"" + tmpl.id + "\" exists");
  std::string id = tmpl.id;
  templates_.emplace(std::move(id), std::move(tmpl));
}

const PromptTemplate& TemplateRegistry::Get(std::string_view id) const {
  auto it = templates_.find(id);
  if (it == templates_.end())
    throw Error(ErrorCode::kUnknownTemplate,
                "unknown template \"" + std::string(id) + "\"");
  return it->second;
}

bool TemplateRegistry::Contains(std::string_view id) const {
  return templates_.find(id) != templates_.end();
}

std::vector<std::string> TemplateRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, t] : templates_) out.push_back(id);
  return out;
}

PromptTemplate TemplateFromJson(const nlohmann::json& j) {
  try {
    PromptTemplate t;
    t.id = j.at("id").get<std::string>();
    t.mode = PromptModeFromName(j.at("mode").get<std::string>());
    t.task = j.at("task").get<std::string>();
    t.output = j.at("output").get<std::string>();
    if (t.id.empty()) throw Error(ErrorCode::kInvalidArgument, "template id is empty");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad template: ") + e.what());
  }
}

nlohmann::json ToJson(const PromptTemplate& tmpl) {
  return {{"id", tmpl.id},
          {"mode", std::string(PromptModeName(tmpl.mode))},
          {"task", tmpl.task},
          {"output", tmpl.output}};
}

std::string BuildPrompt(const PromptContext& ctx, std::string_view template_id,
                        const TemplateRegistry& registry) {
  const PromptTemplate& tmpl = registry.Get(template_id);
  if (tmpl.mode != ctx.mode) {
    throw Error(ErrorCode::kInvalidArgument,
                "template \"" + tmpl.id + "\" is a " +
                    std::string(PromptModeName(tmpl.mode)) + " template");
  }
  std::string out = tmpl.task;
  AppendTables(out, ctx.tables);
  switch (ctx.mode) {
    case PromptMode::kDescribe:
      if (!ctx.examples.empty()) {
        out += "\n\nExamples:";
        for (const auto& ex : ctx.examples)
          out += "\nSQL: " + ex.sql + "\nDescription: " + ex.nl + "\n";
        out.pop_back();
      }
      AppendGuidance(out, ctx.refinement_notes);
      AppendFencedSql(out, ctx.target_sql);
      break;
    case PromptMode::kMerge:
      out += "\n\nParts:";
      for (const auto& part : ctx.parts) out += "\n" + part.name + ": " + part.nl;
      AppendGuidance(out, ctx.refinement_notes);
      AppendFencedSql(out, ctx.target_sql);
      break;
    case PromptMode::kBacktranslate:
      out += "\n\nQuestion: " + ctx.question;
      break;
  }
  out += "\n\n" + tmpl.output + "\n";
  return out;
}

std::string PromptHash(std::string_view prompt) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : prompt) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace benchforge::generation
