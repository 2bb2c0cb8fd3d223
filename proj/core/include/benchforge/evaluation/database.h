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
#ifndef BENCHFORGE_EVALUATION_DATABASE_H_
#define BENCHFORGE_EVALUATION_DATABASE_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "benchforge/error.h"

namespace benchforge::evaluation {

// NULL, INTEGER, REAL, TEXT. BLOBs are returned as TEXT.
using Value = std::variant<std::monostate, int64_t, double, std::string>;

std::string ValueToString(const Value& v);

struct ResultTable {
  std::vector<std::string> column_names;
  std::vector<std::vector<Value>> rows;
  // Set when the producing query has a top-level ORDER BY.
  bool ordered = false;
};

enum class ExecErrorCategory { kSyntax, kUnknownObject, kRuntime };

std::string_view ExecErrorCategoryName(ExecErrorCategory c);

class ExecError : public Error {
 public:
  ExecError(ExecErrorCategory category, const std::string& message)
      : Error(ErrorCode::kExecError, message), category_(category) {}

  ExecErrorCategory category() const { return category_; }

 private:
  ExecErrorCategory category_;
};

// A SQLite connection used as the execution backend. Queries run read-only:
// statements that would modify the database are rejected as runtime errors.
// All methods are safe to call concurrently; the connection is serialized
// internally.
class Database {
 public:
  // Builds an in-memory database from a fixture directory holding
  // schema.sql plus one <table>.csv per table. The CSV header names the
  // columns; an empty field loads as NULL.
  static Database OpenFixture(const std::string& dir);
  // Opens an existing SQLite file read-only.
  static Database OpenFile(const std::string& path);
  static Database OpenInMemory();

  Database(Database&&) noexcept;
  Database& operator=(Database&&) noexcept;
  ~Database();

  // Runs a DDL/DML script. Used for fixture construction only.
  void ExecScript(std::string_view script);

  // Executes a single statement. Throws ExecError.
  ResultTable Execute(std::string_view sql) const;

  std::vector<std::string> TableNames() const;

 private:
  struct Impl;
  explicit Database(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

// Parses RFC 4180 CSV (quoted fields, doubled quotes, CRLF or LF).
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);

}  // namespace benchforge::evaluation

#endif  // BENCHFORGE_EVALUATION_DATABASE_H_
