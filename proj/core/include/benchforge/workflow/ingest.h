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

#ifndef BENCHFORGE_WORKFLOW_INGEST_H_
#define BENCHFORGE_WORKFLOW_INGEST_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "benchforge/sql/schema.h"
#include "benchforge/workflow/types.h"

namespace benchforge::workflow {

// One statement of a query log. Benchmark-format entries also carry the
// question, db_id, id and provenance.
struct LogEntry {
  std::string sql;
  std::optional<std::string> question;
  std::string db_id;
  std::string id;
  std::optional<Provenance> provenance;
  std::string error;  // set when the entry itself is malformed
};

// Accepts semicolon-separated SQL, a JSON array of strings, or a JSON array
// of {question?, query|SQL|sql, db_id?, id?, provenance?} objects. Throws
// Error(kInvalidArgument) when input that looks like JSON does not parse.
std::vector<LogEntry> ParseQueryLog(std::string_view input);

struct IngestOptions {
  std::string source_tag;
  // Store benchmark questions as accepted annotations instead of only as
  // evaluation references.
  bool accept_references = false;
};

struct IngestFailure {
  size_t index = 0;  // 0-based statement index
  std::string code;  // ErrorCodeName of the failure
  std::string message;
};

struct IngestReport {
  size_t statements = 0;
  size_t accepted = 0;
  size_t skipped_duplicate = 0;
  size_t skipped_non_select = 0;
  size_t parse_failures = 0;
  std::vector<IngestFailure> failures;
  std::vector<std::string> item_ids;
};

nlohmann::json ToJson(const IngestReport& r);

enum class PrepareStatus { kOk, kNonSelect, kParseFailure };

struct PreparedQuery {
  PrepareStatus status = PrepareStatus::kOk;
  QueryRecord record;  // ids left empty
  IngestFailure failure;
};

// Parses, canonicalizes and (for nested queries) decomposes one statement.
// Correlated or unsupported nested queries keep no plan and record why in
// whole_reason.
PreparedQuery PrepareQuery(const LogEntry& entry, sql::Dialect dialect,
                           const sql::SchemaCatalog* catalog);

}  // namespace benchforge::workflow

#endif  // BENCHFORGE_WORKFLOW_INGEST_H_
