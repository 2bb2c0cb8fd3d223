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
#include "benchforge/evaluation/rubric.h"

#include <algorithm>
#include <set>

#include "benchforge/evaluation/metrics.h"
#include "benchforge/sql/analysis.h"
#include "benchforge/sql/lexer.h"
#include "benchforge/sql/parser.h"

namespace benchforge::evaluation {
namespace {

constexpr std::pair<RubricReason, std::string_view> kReasonNames[] = {
    {RubricReason::kExecutionFailed, "execution_failed"},
    {RubricReason::kWrongTables, "wrong_tables"},
    {RubricReason::kWrongResults, "wrong_results"},
    {RubricReason::kOrderMismatch, "order_mismatch"},
    {RubricReason::kSuperfluousClause, "superfluous_clause"},
    {RubricReason::kDifferentTables, "different_tables"},
    {RubricReason::kFullyCorrect, "fully_correct"},
    {RubricReason::kHumanOverride, "human_override"},
};

// Base tables, resolved to catalog spelling when possible, lowercased.
std::set<std::string> TableSet(const sql::SqlAst& ast,
                               const sql::SchemaCatalog& catalog) {
  std::set<std::string> out;
  for (const auto& name : sql::ReferencedTables(ast)) {
    const sql::TableDef* def = catalog.FindTable(name);
    out.insert(sql::ToLower(def ? def->name : name));
  }
  return out;
}

RubricJudgment Judge(int level, RubricReason reason, std::string rationale) {
  RubricJudgment j;
  j.level = level;
  j.reason = reason;
  j.rationale = std::move(rationale);
  return j;
}

}  // namespace

std::string_view RubricReasonName(RubricReason r) {
  for (const auto& [reason, name] : kReasonNames) {
    if (reason == r) return name;
  }
  return "execution_failed";
}

std::optional<RubricReason> RubricReasonFromName(std::string_view name) {
  for (const auto& [reason, n] : kReasonNames) {
    if (n == name) return reason;
  }
  return std::nullopt;
}

nlohmann::json ToJson(const RubricJudgment& j) {
  nlohmann::json out = {{"level", j.level},
                        {"reason", RubricReasonName(j.reason)},
                        {"rationale", j.rationale},
                        {"auto", j.automatic}};
  if (!j.automatic) out["override_by"] = j.override_by;
  return out;
}

RubricJudgment RubricJudgmentFromJson(const nlohmann::json& j) {
  RubricJudgment out;
  out.level = j.at("level").get<int>();
  if (out.level < 1 || out.level > 5)
    throw Error(ErrorCode::kInvalidArgument, "rubric level must be 1..5");
  auto reason = RubricReasonFromName(j.at("reason").get<std::string>());
  if (!reason) throw Error(ErrorCode::kInvalidArgument, "unknown rubric reason");
  out.reason = *reason;
  out.rationale = j.value("rationale", "");
  out.automatic = j.value("auto", true);
  out.override_by = j.value("override_by", "");
  return out;
}

RubricJudgment ClassifyRubric(std::string_view original_sql,
                              std::string_view regen_sql, const Database& db,
                              const sql::SchemaCatalog& catalog) {
  ResultTable original;
  try {
    original = db.Execute(original_sql);
  } catch (const Error& e) {
    return Judge(1, RubricReason::kExecutionFailed,
                 std::string("original query fails to execute: ") + e.what());
  }

  sql::SqlAst regen_ast;
  ResultTable regen;
  try {
    regen_ast = sql::ParseSql(regen_sql);
    regen = db.Execute(regen_sql);
  } catch (const Error& e) {
    return Judge(1, RubricReason::kExecutionFailed,
                 std::string("generated SQL fails to execute: ") + e.what());
  }

  bool same_tables = true;
  bool original_distinct = false;
  bool original_ordered = original.ordered;
  try {
    sql::SqlAst original_ast = sql::ParseSql(original_sql);
    same_tables = TableSet(original_ast, catalog) == TableSet(regen_ast, catalog);
    original_distinct = sql::HasTopLevelDistinct(original_ast);
  } catch (const Error&) {
    // Engine-only syntax in the original; table comparison is skipped.
  }

  ResultComparison cmp = CompareResults(regen, original);
  if (!cmp.multiset_equal) {
    if (!same_tables)
      return Judge(2, RubricReason::kWrongTables,
                   "results differ and the query reads different tables");
    return Judge(3, RubricReason::kWrongResults,
                 "same tables but different results");
  }
  if (original_ordered && (!regen.ordered || !cmp.sequence_equal)) {
    return Judge(4, RubricReason::kOrderMismatch,
                 regen.ordered ? "same rows in a different order"
                               : "same rows but the required ORDER BY is missing");
  }
  if (regen.ordered && !original_ordered)
    return Judge(4, RubricReason::kSuperfluousClause, "superfluous ORDER BY");
  if (sql::HasTopLevelDistinct(regen_ast) && !original_distinct)
    return Judge(4, RubricReason::kSuperfluousClause, "superfluous DISTINCT");
  if (!same_tables)
    return Judge(4, RubricReason::kDifferentTables,
                 "same results through different tables");
  return Judge(5, RubricReason::kFullyCorrect, "execution match");
}

RubricJudgment OverrideRubric(int level, std::string annotator_id,
                              std::string rationale) {
  if (level < 1 || level > 5)
    throw Error(ErrorCode::kInvalidArgument, "rubric level must be 1..5");
  if (annotator_id.empty())
    throw Error(ErrorCode::kInvalidArgument, "override requires an annotator id");
  RubricJudgment j;
  j.level = level;
  j.reason = RubricReason::kHumanOverride;
  j.rationale = std::move(rationale);
  j.automatic = false;
  j.override_by = std::move(annotator_id);
  return j;
}

}  // namespace benchforge::evaluation
