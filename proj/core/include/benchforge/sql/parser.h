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

#ifndef BENCHFORGE_SQL_PARSER_H_
#define BENCHFORGE_SQL_PARSER_H_

#include <optional>
#include <string>
#include <string_view>

#include "benchforge/sql/ast.h"

namespace benchforge::sql {

// Parses a single SELECT statement (optionally terminated by ';').
//
// Supported: WITH [RECURSIVE], joins of every kind, comma joins, set
// operations, subqueries in FROM/WHERE/HAVING/select list, CASE, CAST,
// window functions (the OVER clause is kept as opaque canonical tokens),
// ORDER BY / LIMIT / OFFSET and, for the warehouse dialect, FETCH FIRST.
//
// Throws SyntaxError (with line/column/token) on malformed input and
// UnsupportedConstruct naming the feature for statements or syntax outside
// the grammar (DML/DDL, TOP, LATERAL, table functions, ...).
SqlAst ParseSql(std::string_view text, Dialect dialect = Dialect::kGeneric);

std::string_view DialectName(Dialect dialect);
std::optional<Dialect> DialectFromName(std::string_view name);

// Returns the uppercased leading keyword of a statement ("SELECT", "UPDATE",
// ...), or an empty string if the statement does not start with a word.
// Leading parentheses and comments are skipped.
std::string LeadingKeyword(std::string_view statement);

}  // namespace benchforge::sql

#endif  // BENCHFORGE_SQL_PARSER_H_
