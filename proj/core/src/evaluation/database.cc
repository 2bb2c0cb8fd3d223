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
#include "benchforge/evaluation/database.h"

#include <sqlite3.h>

#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

#include "benchforge/sql/analysis.h"
#include "benchforge/sql/parser.h"

namespace benchforge::evaluation {
namespace {

ExecErrorCategory Categorize(std::string_view message) {
  auto has = [&](std::string_view s) { return message.find(s) != std::string_view::npos; };
  if (has("no such table") || has("no such column") || has("no such function") ||
      has("ambiguous column")) {
    return ExecErrorCategory::kUnknownObject;
  }
  if (has("syntax error") || has("incomplete input") || has("unrecognized token"))
    return ExecErrorCategory::kSyntax;
  return ExecErrorCategory::kRuntime;
}

bool IsBlank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n;") == std::string_view::npos;
}

std::string ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string QuoteIdent(std::string_view name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ValueToString(const Value& v) {
  struct {
    std::string operator()(std::monostate) const { return "NULL"; }
    std::string operator()(int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const {
      std::ostringstream ss;
      ss.precision(15);
      ss << d;
      return ss.str();
    }
    std::string operator()(const std::string& s) const { return s; }
  } visitor;
  return std::visit(visitor, v);
}

std::string_view ExecErrorCategoryName(ExecErrorCategory c) {
  switch (c) {
    case ExecErrorCategory::kSyntax: return "syntax";
    case ExecErrorCategory::kUnknownObject: return "unknown_object";
    case ExecErrorCategory::kRuntime: return "runtime";
  }
  return "runtime";
}

struct Database::Impl {
  sqlite3* db = nullptr;
  mutable std::mutex mu;

  ~Impl() {
    if (db) sqlite3_close_v2(db);
  }

  [[noreturn]] void Fail(int rc) const {
    std::string msg = db ? sqlite3_errmsg(db) : sqlite3_errstr(rc);
    throw ExecError(Categorize(msg), msg);
  }
};

Database::Database(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Database::Database(Database&&) noexcept = default;
Database& Database::operator=(Database&&) noexcept = default;
Database::~Database() = default;

Database Database::OpenInMemory() {
  auto impl = std::make_unique<Impl>();
  int rc = sqlite3_open_v2(":memory:", &impl->db,
                           SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE |
                               SQLITE_OPEN_FULLMUTEX,
                           nullptr);
  if (rc != SQLITE_OK) impl->Fail(rc);
  return Database(std::move(impl));
}

Database Database::OpenFile(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw Error(ErrorCode::kIoError, "no database file " + path);
  auto impl = std::make_unique<Impl>();
  int rc = sqlite3_open_v2(path.c_str(), &impl->db,
                           SQLITE_OPEN_READONLY | SQLITE_OPEN_FULLMUTEX, nullptr);
  if (rc != SQLITE_OK) impl->Fail(rc);
  return Database(std::move(impl));
}

Database Database::OpenFixture(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::path root(dir);
  Database db = OpenInMemory();
  db.ExecScript(ReadAll(root / "schema.sql"));
  sqlite3* h = db.impl_->db;
  db.ExecScript("BEGIN");
  for (const auto& table : db.TableNames()) {
    fs::path csv = root / (table + ".csv");
    if (!fs::exists(csv)) continue;
    auto records = ParseCsv(ReadAll(csv));
    if (records.empty()) continue;
    const auto& header = records[0];
    std::string sql = "INSERT INTO " + QuoteIdent(table) + " (";
    for (size_t i = 0; i < header.size(); ++i) sql += (i ? ", " : "") + QuoteIdent(header[i]);
    sql += ") VALUES (";
    for (size_t i = 0; i < header.size(); ++i) sql += i ? ", ?" : "?";
    sql += ")";
    sqlite3_stmt* stmt = nullptr;
    if (sqlite3_prepare_v2(h, sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK)
      db.impl_->Fail(SQLITE_ERROR);
    for (size_t r = 1; r < records.size(); ++r) {
      const auto& rec = records[r];
      if (rec.size() != header.size()) {
        sqlite3_finalize(stmt);
        throw Error(ErrorCode::kIoError, csv.string() + ": record " +
                                             std::to_string(r) + " has " +
                                             std::to_string(rec.size()) + " fields");
      }
      for (size_t i = 0; i < rec.size(); ++i) {
        if (rec[i].empty()) {
          sqlite3_bind_null(stmt, static_cast<int>(i + 1));
        } else {
          sqlite3_bind_text(stmt, static_cast<int>(i + 1), rec[i].data(),
                            static_cast<int>(rec[i].size()), SQLITE_TRANSIENT);
        }
      }
      if (sqlite3_step(stmt) != SQLITE_DONE) {
        sqlite3_finalize(stmt);
        db.impl_->Fail(SQLITE_ERROR);
      }
      sqlite3_reset(stmt);
    }
    sqlite3_finalize(stmt);
  }
  db.ExecScript("COMMIT");
  return db;
}

void Database::ExecScript(std::string_view script) {
  std::lock_guard<std::mutex> lock(impl_->mu);
  std::string text(script);
  char* err = nullptr;
  if (sqlite3_exec(impl_->db, text.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "script failed";
    sqlite3_free(err);
    throw ExecError(Categorize(msg), msg);
  }
}

ResultTable Database::Execute(std::string_view sql) const {
  ResultTable result;
  try {
    result.ordered = sql::HasTopLevelOrderBy(sql::ParseSql(sql));
  } catch (const Error&) {
    // Engine-specific syntax the parser does not know; treat as unordered.
  }

  std::lock_guard<std::mutex> lock(impl_->mu);
  sqlite3_stmt* stmt = nullptr;
  const char* tail = nullptr;
  std::string text(sql);
  int rc = sqlite3_prepare_v2(impl_->db, text.c_str(),
                              static_cast<int>(text.size()), &stmt, &tail);
  if (rc != SQLITE_OK) impl_->Fail(rc);
  std::unique_ptr<sqlite3_stmt, int (*)(sqlite3_stmt*)> guard(stmt, sqlite3_finalize);
  if (!stmt) throw ExecError(ExecErrorCategory::kSyntax, "empty statement");
  if (tail && !IsBlank(tail))
    throw ExecError(ExecErrorCategory::kSyntax, "more than one statement");
  if (!sqlite3_stmt_readonly(stmt))
    throw ExecError(ExecErrorCategory::kRuntime, "statement is not read-only");

  int ncol = sqlite3_column_count(stmt);
  for (int i = 0; i < ncol; ++i) {
    const char* name = sqlite3_column_name(stmt, i);
    result.column_names.emplace_back(name ? name : "");
  }
  while ((rc = sqlite3_step(stmt)) == SQLITE_ROW) {
    std::vector<Value> row;
    row.reserve(static_cast<size_t>(ncol));
    for (int i = 0; i < ncol; ++i) {
      switch (sqlite3_column_type(stmt, i)) {
        case SQLITE_NULL:
          row.emplace_back(std::monostate{});
          break;
        case SQLITE_INTEGER:
          row.emplace_back(static_cast<int64_t>(sqlite3_column_int64(stmt, i)));
          break;
        case SQLITE_FLOAT:
          row.emplace_back(sqlite3_column_double(stmt, i));
          break;
        default: {
          const auto* p = reinterpret_cast<const char*>(sqlite3_column_blob(stmt, i));
          int n = sqlite3_column_bytes(stmt, i);
          row.emplace_back(std::string(p ? p : "", static_cast<size_t>(n)));
        }
      }
    }
    result.rows.push_back(std::move(row));
  }
  if (rc != SQLITE_DONE) impl_->Fail(rc);
  return result;
}

std::vector<std::string> Database::TableNames() const {
  ResultTable t = Execute(
      "SELECT name FROM sqlite_master WHERE type = 'table' AND name NOT LIKE "
      "'sqlite_%' ORDER BY rowid");
  std::vector<std::string> out;
  for (const auto& row : t.rows) out.push_back(std::get<std::string>(row[0]));
  return out;
}

std::vector<std::vector<std::string>> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  size_t i = 0;
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    records.push_back(std::move(record));
    record.clear();
    any = false;
  };
  while (i < text.size()) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        quoted = false;
      } else {
        field += c;
      }
      ++i;
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) end_record();
    } else {
      field += c;
      any = true;
    }
    ++i;
  }
  if (any || !field.empty()) end_record();
  return records;
}

}  // namespace benchforge::evaluation
