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

#ifndef BENCHFORGE_SQL_RENDER_H_
#define BENCHFORGE_SQL_RENDER_H_

#include <string>

#include "benchforge/sql/ast.h"

namespace benchforge::sql {

// Canonical single-line rendering: uppercase keywords, single-space
// separation, explicit AS before every alias. Literals, identifiers and
// clause order are emitted exactly as parsed, so ParseSql(RenderSql(ast))
// is structurally equal to |ast|.
std::string RenderSql(const SqlAst& ast);
std::string RenderQuery(const Query& query);
std::string RenderExpr(const Expr& expr);
std::string RenderIdentifier(const Identifier& id);

}  // namespace benchforge::sql

#endif  // BENCHFORGE_SQL_RENDER_H_
