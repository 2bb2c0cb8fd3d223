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

#ifndef BENCHFORGE_SQL_DECOMPOSE_H_
#define BENCHFORGE_SQL_DECOMPOSE_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "benchforge/sql/ast.h"
#include "benchforge/sql/schema.h"

namespace benchforge::sql {

struct DecompositionStep {
  std::string cte_name;             // step_1 .. step_n
  Query subquery;                   // flat after substitution
  std::set<std::string> depends_on; // earlier cte_names it reads

  bool operator==(const DecompositionStep&) const = default;
};

// A nested query rewritten as an ordered list of CTEs plus a final query that
// reads base tables and step names. Steps are in topological order with the
// innermost subqueries first.
struct DecompositionPlan {
  std::vector<DecompositionStep> steps;
  Query final;
  Dialect dialect = Dialect::kGeneric;

  bool operator==(const DecompositionPlan& o) const {
    return steps == o.steps && final == o.final;
  }
};

// Rewrites every nested subquery (FROM, WHERE, HAVING, select list, ORDER BY)
// and every existing CTE into a step. Existing CTE names are replaced by their
// step names; references keep the old name as an alias so qualified columns
// still resolve.
//
// Throws Error(kNotNested) for depth-0 queries and Error(kCorrelatedSubquery)
// when any subquery references columns of an enclosing query. Correlation is
// detected through qualified references; when |catalog| is supplied,
// unqualified columns absent from every local source are treated as outer
// references too. Recursive CTEs and CTE column lists raise
// UnsupportedConstruct.
DecompositionPlan Decompose(const SqlAst& ast,
                            const SchemaCatalog* catalog = nullptr);

// Returns the rendering of the first correlated subquery, if any.
std::optional<std::string> FindCorrelatedSubquery(
    const SqlAst& ast, const SchemaCatalog* catalog = nullptr);

// Nesting depth with step-reference stubs (SELECT cols FROM step_k) counted
// as leaves: the depth a step or final query has once its children are
// substituted. Zero for every step of a plan.
int ResidualDepth(const Query& query);

// Single statement: WITH step_1 AS (...), ..., step_n AS (...) <final>.
Query PlanToQuery(const DecompositionPlan& plan);
std::string PlanToSql(const DecompositionPlan& plan);

// Persisted form: steps and final as canonical SQL text.
nlohmann::json PlanToJson(const DecompositionPlan& plan);
DecompositionPlan PlanFromJson(const nlohmann::json& j, Dialect dialect);

}  // namespace benchforge::sql

#endif  // BENCHFORGE_SQL_DECOMPOSE_H_
