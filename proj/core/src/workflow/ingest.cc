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

#include "benchforge/workflow/ingest.h"

#include "benchforge/error.h"
#include "benchforge/sql/analysis.h"
#include "benchforge/sql/decompose.h"
#include "benchforge/sql/lexer.h"
#include "benchforge/sql/parser.h"
#include "benchforge/sql/render.h"

namespace benchforge::workflow {
namespace {

using nlohmann::json;

LogEntry EntryFromJson(const json& j) {
  LogEntry e;
  if (j.is_string()) {
    e.sql = j.get<std::string>();
    return e;
  }
  if (!j.is_object()) {
    e.error = "entry is neither a string nor an object";
    return e;
  }
  for (const char* key : {"query", "SQL", "sql"}) {
    if (j.contains(key) && j[key].is_string()) {
      e.sql = j[key].get<std::string>();
      break;
    }
  }
  if (e.sql.empty()) e.error = "entry has no query, SQL or sql field";
  if (j.contains("question") && j["question"].is_string())
    e.question = j["question"].get<std::string>();
  if (j.contains("db_id") && j["db_id"].is_string()) e.db_id = j["db_id"].get<std::string>();
  if (j.contains("id") && j["id"].is_string()) e.id = j["id"].get<std::string>();
  if (j.contains("provenance") && j["provenance"].is_object())
    e.provenance = ProvenanceFromJson(j["provenance"]);
  return e;
}

}  // namespace

std::vector<LogEntry> ParseQueryLog(std::string_view input) {
  std::vector<LogEntry> out;
  size_t first = input.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && input[first] == '[') {
    json doc = json::parse(input.begin(), input.end(), nullptr, false);
    if (doc.is_discarded() || !doc.is_array())
      throw Error(ErrorCode::kInvalidArgument, "query log is not a valid JSON array");
    for (const auto& j : doc) out.push_back(EntryFromJson(j));
    return out;
  }
  for (auto& stmt : sql::SplitStatements(input)) {
    LogEntry e;
    e.sql = std::move(stmt);
    out.push_back(std::move(e));
  }
  return out;
}

json ToJson(const IngestReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"index", f.index}, {"code", f.code}, {"message", f.message}});
  return {{"statements", r.statements},
          {"accepted", r.accepted},
          {"skipped_duplicate", r.skipped_duplicate},
          {"skipped_non_select", r.skipped_non_select},
          {"parse_failures", r.parse_failures},
          {"failures", failures},
          {"item_ids", r.item_ids}};
}

PreparedQuery PrepareQuery(const LogEntry& entry, sql::Dialect dialect,
                           const sql::SchemaCatalog* catalog) {
  PreparedQuery out;
  auto fail = [&](ErrorCode code, const std::string& msg) {
    out.status = PrepareStatus::kParseFailure;
    out.failure.code = std::string(ErrorCodeName(code));
    out.failure.message = msg;
    return out;
  };
  if (!entry.error.empty()) return fail(ErrorCode::kInvalidArgument, entry.error);
  std::string keyword = sql::LeadingKeyword(entry.sql);
  if (!keyword.empty() && keyword != "SELECT" && keyword != "WITH") {
    out.status = PrepareStatus::kNonSelect;
    out.failure.code = "NonSelect";
    out.failure.message = keyword + " statement skipped";
    return out;
  }
  sql::SqlAst ast;
  try {
    ast = sql::ParseSql(entry.sql, dialect);
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  }
  QueryRecord& q = out.record;
  q.raw_sql = entry.sql;
  q.normalized_sql = sql::RenderSql(ast);
  q.is_nested = sql::NestingDepth(ast) >= 1;
  q.reference_question = entry.question;
  q.db_id = entry.db_id;
  if (q.is_nested) {
    try {
      q.decomposition = sql::Decompose(ast, catalog);
    } catch (const Error& e) {
      q.whole_reason = std::string(ErrorCodeName(e.code())) + ": " + e.what();
    }
  }
  return out;
}

}  // namespace benchforge::workflow
