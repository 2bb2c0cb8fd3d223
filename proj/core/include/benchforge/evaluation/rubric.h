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
#ifndef BENCHFORGE_EVALUATION_RUBRIC_H_
#define BENCHFORGE_EVALUATION_RUBRIC_H_

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "benchforge/evaluation/database.h"
#include "benchforge/sql/schema.h"

namespace benchforge::evaluation {

enum class RubricReason {
  kExecutionFailed,     // 1
  kWrongTables,         // 2
  kWrongResults,        // 3
  kOrderMismatch,       // 4
  kSuperfluousClause,   // 4
  kDifferentTables,     // 4: same results through other tables
  kFullyCorrect,        // 5
  kHumanOverride,
};

std::string_view RubricReasonName(RubricReason r);
std::optional<RubricReason> RubricReasonFromName(std::string_view name);

struct RubricJudgment {
  int level = 1;
  RubricReason reason = RubricReason::kExecutionFailed;
  std::string rationale;
  bool automatic = true;
  std::string override_by;  // annotator id when !automatic

  bool operator==(const RubricJudgment&) const = default;
};

nlohmann::json ToJson(const RubricJudgment& j);
RubricJudgment RubricJudgmentFromJson(const nlohmann::json& j);

// Automated fidelity grade of |regen_sql| against |original_sql|:
//   1  regen does not parse or does not execute
//   2  results differ and the base-table sets differ
//   3  results differ over the same base tables
//   4  results match as multisets, but the original is ordered and the
//      regen's order differs or it has no ORDER BY, or the regen adds a
//      top-level ORDER BY or DISTINCT, or it reads other tables
//   5  exec match with no superfluous clauses over the same tables
// Table names are resolved case-insensitively; |catalog| may be empty.
// The original is expected to execute; if it does not, the judgment is
// level 1 with a rationale saying so.
RubricJudgment ClassifyRubric(std::string_view original_sql,
                              std::string_view regen_sql, const Database& db,
                              const sql::SchemaCatalog& catalog);

// A human judgment replacing an automated one.
RubricJudgment OverrideRubric(int level, std::string annotator_id,
                              std::string rationale);

}  // namespace benchforge::evaluation

#endif  // BENCHFORGE_EVALUATION_RUBRIC_H_
