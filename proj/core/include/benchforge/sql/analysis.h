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

#ifndef BENCHFORGE_SQL_ANALYSIS_H_
#define BENCHFORGE_SQL_ANALYSIS_H_

#include <optional>
#include <string>
#include <vector>

#include "benchforge/sql/ast.h"
#include "benchforge/sql/schema.h"

namespace benchforge::sql {

// Maximum number of select-cores stacked below the root: 0 for a flat
// query. Subqueries in FROM, WHERE, HAVING, the select list and ORDER BY
// each add one level; CTE bodies and parenthesized compound operands sit at
// the level of the query that owns them.
int NestingDepth(const Query& query);
inline int NestingDepth(const SqlAst& ast) { return NestingDepth(ast.root); }

// Base tables referenced anywhere in the query, subqueries included, in
// order of first appearance and deduplicated case-insensitively. References
// to CTE names in scope are not base tables.
std::vector<std::string> ReferencedTables(const Query& query);
inline std::vector<std::string> ReferencedTables(const SqlAst& ast) {
  return ReferencedTables(ast.root);
}

// ReferencedTables resolved against |catalog|, each with its full column
// list. Throws UnknownTableError listing every name missing from the
// catalog.
std::vector<TableDef> ExtractTables(const SqlAst& ast,
                                    const SchemaCatalog& catalog);

// Output column names of a query when each is derivable (alias or bare
// column reference) and the names are distinct; nullopt otherwise.
std::optional<std::vector<Identifier>> OutputColumnNames(const Query& query);

// Clause facts used by the evaluation rubric.
bool HasTopLevelOrderBy(const SqlAst& ast);
bool HasTopLevelDistinct(const SqlAst& ast);

}  // namespace benchforge::sql

#endif  // BENCHFORGE_SQL_ANALYSIS_H_
