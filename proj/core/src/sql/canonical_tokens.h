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

#ifndef SRC_SQL_CANONICAL_TOKENS_H_
#define SRC_SQL_CANONICAL_TOKENS_H_

#include <string>
#include <vector>

#include "benchforge/sql/lexer.h"
#include "benchforge/sql/render.h"

namespace benchforge::sql {

// Text of a token inside an opaque region (window specifications): keywords
// uppercased, quoted identifiers re-quoted, everything else verbatim.
std::string CanonicalTokenText(const Token& token);

// Joins canonical token texts with the spacing rules used by RenderSql.
std::string JoinCanonicalTokens(const std::vector<std::string>& tokens);

}  // namespace benchforge::sql

#endif  // SRC_SQL_CANONICAL_TOKENS_H_
