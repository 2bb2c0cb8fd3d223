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

#ifndef SRC_GENERATION_PHRASING_H_
#define SRC_GENERATION_PHRASING_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "benchforge/sql/ast.h"
#include "benchforge/sql/schema.h"

// The controlled English used by the mock backend. A sentence is
//   <Verb> [distinct] <item [as alias]>... from <source> [where <conds>]
//   [, grouped by <items>] [, keeping groups where <conds>]
//   [, sorted by <item> [in descending order] [then by ...]]
//   [, keeping only the first N rows [after skipping M rows]].
// Single-table queries with conjunctive filters describe into it exactly and
// parse back to an equivalent query. A decomposition step name ("step_2")
// stands where a merged description later inlines "(<verb> ...)".

namespace benchforge::generation::phrasing {

const std::vector<std::string_view>& LeadVerbs();

// Sentence body without verb or final period, or nullopt when the query is
// outside the grammar.
std::optional<std::string> DescribeExact(const sql::Query& query);

// Lossy body for anything else: outputs, tables, filtered and grouped
// columns. Never parses as an exact sentence.
std::string DescribeLoosely(const sql::Query& query);

// Body of a sentence whose first word is a lead verb.
std::optional<std::string_view> StripLeadVerb(std::string_view sentence);

// SQL for a sentence in the grammar; nullopt otherwise.
std::optional<std::string> ParseSentence(std::string_view sentence);

// Best effort for free text: the first mentioned table and its mentioned
// columns.
std::string GuessSql(std::string_view text, const std::vector<sql::TableDef>& tables);

}  // namespace benchforge::generation::phrasing

#endif  // SRC_GENERATION_PHRASING_H_
