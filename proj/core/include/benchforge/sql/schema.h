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

#ifndef BENCHFORGE_SQL_SCHEMA_H_
#define BENCHFORGE_SQL_SCHEMA_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace benchforge::sql {

struct ColumnDef {
  std::string name;
  std::string type;  // declared type, opaque
  bool nullable = true;

  bool operator==(const ColumnDef&) const = default;
};

struct TableDef {
  std::string name;
  std::vector<ColumnDef> columns;
  std::vector<std::string> primary_key;

  const ColumnDef* FindColumn(std::string_view column) const;
  bool operator==(const TableDef&) const = default;
};

enum class SchemaFormat { kAuto, kDdl, kJson };

// Tables and columns a project's queries run against. Table names are unique
// case-insensitively, as are column names within a table.
class SchemaCatalog {
 public:
  SchemaCatalog() = default;
  SchemaCatalog(std::string schema_id, SchemaFormat source_format)
      : schema_id_(std::move(schema_id)), source_format_(source_format) {}

  const std::string& schema_id() const { return schema_id_; }
  SchemaFormat source_format() const { return source_format_; }
  const std::vector<TableDef>& tables() const { return tables_; }
  bool empty() const { return tables_.empty(); }

  // Throws Error(kDuplicateTable) or Error(kSchemaParseError) for a
  // duplicate column.
  void AddTable(TableDef table);

  // Case-insensitive lookup. A qualified name ("dw.students") matches either
  // the full name or, failing that, its last component.
  const TableDef* FindTable(std::string_view name) const;

  nlohmann::json ToJson() const;

  bool operator==(const SchemaCatalog&) const = default;

 private:
  std::string schema_id_;
  SchemaFormat source_format_ = SchemaFormat::kDdl;
  std::vector<TableDef> tables_;
};

// Loads a catalog from DDL text (semicolon-separated CREATE TABLE statements;
// other statements are ignored) or from the JSON table format:
//   {"schema_id": str, "tables": [{"name": str, "columns": [[name, type]...],
//    "primary_key": [str...]}]}
// kAuto picks JSON when the first non-blank character is '{'.
// |schema_id| names DDL catalogs and JSON catalogs lacking "schema_id".
// Throws SchemaParseError with a location, or Error(kDuplicateTable).
SchemaCatalog LoadSchema(std::string_view input,
                         SchemaFormat format = SchemaFormat::kAuto,
                         std::string_view schema_id = "default");

SchemaCatalog SchemaFromJson(const nlohmann::json& j,
                             std::string_view fallback_id = "default");

}  // namespace benchforge::sql

#endif  // BENCHFORGE_SQL_SCHEMA_H_
