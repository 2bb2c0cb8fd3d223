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

#include "benchforge/sql/schema.h"

#include <cctype>

#include "benchforge/error.h"
#include "benchforge/sql/lexer.h"

namespace benchforge::sql {

const ColumnDef* TableDef::FindColumn(std::string_view column) const {
  for (const auto& c : columns) {
    if (EqualsIgnoreCase(c.name, column)) return &c;
  }
  return nullptr;
}

void SchemaCatalog::AddTable(TableDef table) {
  for (const auto& t : tables_) {
    if (EqualsIgnoreCase(t.name, table.name)) {
      throw Error(ErrorCode::kDuplicateTable, "duplicate table: " + table.name);
    }
  }
  for (size_t i = 0; i < table.columns.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (EqualsIgnoreCase(table.columns[i].name, table.columns[j].name)) {
        throw SchemaParseError("duplicate column " + table.columns[i].name +
                                   " in table " + table.name,
                               0, 0);
      }
    }
  }
  tables_.push_back(std::move(table));
}

const TableDef* SchemaCatalog::FindTable(std::string_view name) const {
  for (const auto& t : tables_) {
    if (EqualsIgnoreCase(t.name, name)) return &t;
  }
  auto last_component = [](std::string_view n) {
    size_t dot = n.rfind('.');
    return dot == std::string_view::npos ? n : n.substr(dot + 1);
  };
  std::string_view short_name = last_component(name);
  for (const auto& t : tables_) {
    if (EqualsIgnoreCase(last_component(t.name), short_name)) return &t;
  }
  return nullptr;
}

nlohmann::json SchemaCatalog::ToJson() const {
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& t : tables_) {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : t.columns) {
      nlohmann::json col = {c.name, c.type};
      if (!c.nullable) col.push_back(false);
      cols.push_back(std::move(col));
    }
    tables.push_back(
        {{"name", t.name}, {"columns", cols}, {"primary_key", t.primary_key}});
  }
  return {{"schema_id", schema_id_}, {"tables", tables}};
}

namespace {

class DdlParser {
 public:
  DdlParser(std::string_view text, std::string schema_id)
      : catalog_(std::move(schema_id), SchemaFormat::kDdl) {
    try {
      tokens_ = Tokenize(text);
    } catch (const SyntaxError& e) {
      throw SchemaParseError("cannot tokenize DDL", e.line(), e.column());
    }
  }

  SchemaCatalog Run() {
    while (Peek().kind != TokenKind::kEnd) {
      if (Peek().IsPunct(';')) {
        ++pos_;
        continue;
      }
      if (IsWord(Peek(), "CREATE") && IsCreateTable()) {
        ParseCreateTable();
      } else {
        SkipStatement();
      }
    }
    return std::move(catalog_);
  }

 private:
  const Token& Peek(size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& Consume() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  static bool IsWord(const Token& t, std::string_view kw) {
    return t.kind == TokenKind::kWord && EqualsIgnoreCase(t.text, kw);
  }
  [[noreturn]] void Fail(const std::string& message) const {
    const Token& t = Peek();
    throw SchemaParseError(
        message + (t.kind == TokenKind::kEnd ? "" : " near \"" + t.text + "\""),
        t.line, t.column);
  }

  bool IsCreateTable() const {
    size_t i = 1;
    while (IsWord(Peek(i), "TEMP") || IsWord(Peek(i), "TEMPORARY") ||
           IsWord(Peek(i), "GLOBAL") || IsWord(Peek(i), "LOCAL") ||
           IsWord(Peek(i), "UNLOGGED") || IsWord(Peek(i), "EXTERNAL"))
      ++i;
    return IsWord(Peek(i), "TABLE");
  }

  void SkipStatement() {
    int depth = 0;
    while (Peek().kind != TokenKind::kEnd) {
      const Token& t = Consume();
      if (t.IsPunct('(')) ++depth;
      if (t.IsPunct(')')) --depth;
      if (t.IsPunct(';') && depth <= 0) return;
    }
  }

  std::string ParseName() {
    const Token& t = Peek();
    if (t.kind != TokenKind::kWord && t.kind != TokenKind::kQuotedIdentifier)
      Fail("expected name");
    Consume();
    return t.text;
  }

  // Skips tokens until a top-level ',' or ')' (not consumed).
  void SkipToItemEnd() {
    int depth = 0;
    while (true) {
      const Token& t = Peek();
      if (t.kind == TokenKind::kEnd) Fail("unterminated table definition");
      if (depth == 0 && (t.IsPunct(',') || t.IsPunct(')'))) return;
      if (t.IsPunct('(')) ++depth;
      if (t.IsPunct(')')) --depth;
      Consume();
    }
  }

  std::vector<std::string> ParseNameList() {
    std::vector<std::string> names;
    if (!Peek().IsPunct('(')) Fail("expected '('");
    Consume();
    do {
      names.push_back(ParseName());
      // Skip ordering/length qualifiers inside key lists.
      while (!Peek().IsPunct(',') && !Peek().IsPunct(')')) {
        if (Peek().kind == TokenKind::kEnd) Fail("unterminated column list");
        Consume();
      }
    } while (Peek().IsPunct(',') && (Consume(), true));
    if (!Peek().IsPunct(')')) Fail("expected ')'");
    Consume();
    return names;
  }

  static bool IsConstraintStart(const Token& t) {
    static constexpr std::string_view kWords[] = {
        "CONSTRAINT", "PRIMARY", "NOT",     "NULL",       "UNIQUE",
        "CHECK",      "DEFAULT", "REFERENCES", "COLLATE", "AUTOINCREMENT",
        "AUTO_INCREMENT", "GENERATED", "IDENTITY", "COMMENT", "ENCODE"};
    if (t.kind != TokenKind::kWord) return false;
    for (auto w : kWords) {
      if (EqualsIgnoreCase(t.text, w)) return true;
    }
    return false;
  }

  void ParseCreateTable() {
    const Token& create = Consume();
    while (!IsWord(Peek(), "TABLE")) Consume();
    Consume();
    if (IsWord(Peek(), "IF")) {
      Consume();
      if (!IsWord(Consume(), "NOT") || !IsWord(Consume(), "EXISTS"))
        Fail("expected IF NOT EXISTS");
    }
    TableDef table;
    table.name = ParseName();
    while (Peek().IsPunct('.')) {
      Consume();
      table.name += "." + ParseName();
    }
    if (IsWord(Peek(), "AS")) Fail("CREATE TABLE ... AS SELECT is not supported");
    if (!Peek().IsPunct('(')) Fail("expected '(' after table name");
    Consume();
    while (true) {
      const Token& t = Peek();
      if (IsWord(t, "CONSTRAINT")) {
        Consume();
        ParseName();
        continue;
      }
      if (IsWord(t, "PRIMARY") && IsWord(Peek(1), "KEY")) {
        Consume();
        Consume();
        table.primary_key = ParseNameList();
        SkipToItemEnd();
      } else if (IsWord(t, "UNIQUE") || IsWord(t, "CHECK") ||
                 IsWord(t, "FOREIGN") || IsWord(t, "KEY") ||
                 IsWord(t, "INDEX")) {
        SkipToItemEnd();
      } else {
        ParseColumn(table);
      }
      if (Peek().IsPunct(',')) {
        Consume();
        continue;
      }
      if (Peek().IsPunct(')')) {
        Consume();
        break;
      }
      Fail("expected ',' or ')'");
    }
    // Table options up to the terminating semicolon.
    while (Peek().kind != TokenKind::kEnd && !Peek().IsPunct(';')) Consume();
    if (table.columns.empty()) Fail("table " + table.name + " has no columns");
    try {
      catalog_.AddTable(std::move(table));
    } catch (const SchemaParseError& e) {
      throw SchemaParseError(e.what(), create.line, create.column);
    }
  }

  void ParseColumn(TableDef& table) {
    ColumnDef col;
    col.name = ParseName();
    // Declared type: words and a parenthesized argument list.
    while (Peek().kind == TokenKind::kWord && !IsConstraintStart(Peek())) {
      if (!col.type.empty()) col.type += ' ';
      col.type += Consume().text;
      if (Peek().IsPunct('(')) {
        Consume();
        col.type += '(';
        bool first = true;
        while (!Peek().IsPunct(')')) {
          if (Peek().kind == TokenKind::kEnd) Fail("unterminated type");
          const Token& a = Consume();
          if (a.IsPunct(',')) {
            col.type += ", ";
            first = true;
            continue;
          }
          if (!first) col.type += ' ';
          col.type += a.text;
          first = false;
        }
        Consume();
        col.type += ')';
      }
    }
    // Column constraints.
    int depth = 0;
    while (true) {
      const Token& t = Peek();
      if (t.kind == TokenKind::kEnd) Fail("unterminated column definition");
      if (depth == 0 && (t.IsPunct(',') || t.IsPunct(')'))) break;
      if (depth == 0 && IsWord(t, "NOT") && IsWord(Peek(1), "NULL")) {
        col.nullable = false;
      } else if (depth == 0 && IsWord(t, "PRIMARY") && IsWord(Peek(1), "KEY")) {
        col.nullable = false;
        table.primary_key = {col.name};
      }
      if (t.IsPunct('(')) ++depth;
      if (t.IsPunct(')')) --depth;
      Consume();
    }
    table.columns.push_back(std::move(col));
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  SchemaCatalog catalog_;
};

}  // namespace

SchemaCatalog SchemaFromJson(const nlohmann::json& j,
                             std::string_view fallback_id) {
  if (!j.is_object() || !j.contains("tables") || !j["tables"].is_array())
    throw SchemaParseError("schema JSON must be an object with a tables array",
                           1, 1);
  std::string id = j.value("schema_id", std::string(fallback_id));
  SchemaCatalog catalog(id, SchemaFormat::kJson);
  size_t index = 0;
  for (const auto& t : j["tables"]) {
    ++index;
    auto fail = [&](const std::string& what) {
      throw SchemaParseError("tables[" + std::to_string(index - 1) + "]: " + what,
                             0, static_cast<int>(index));
    };
    if (!t.is_object() || !t.contains("name") || !t["name"].is_string())
      fail("missing name");
    TableDef table;
    table.name = t["name"].get<std::string>();
    if (!t.contains("columns") || !t["columns"].is_array()) fail("missing columns");
    for (const auto& c : t["columns"]) {
      ColumnDef col;
      if (c.is_array() && !c.empty() && c[0].is_string()) {
        col.name = c[0].get<std::string>();
        if (c.size() > 1 && c[1].is_string()) col.type = c[1].get<std::string>();
        if (c.size() > 2 && c[2].is_boolean()) col.nullable = c[2].get<bool>();
      } else if (c.is_object() && c.contains("name")) {
        col.name = c["name"].get<std::string>();
        col.type = c.value("type", std::string());
        col.nullable = c.value("nullable", true);
      } else if (c.is_string()) {
        col.name = c.get<std::string>();
      } else {
        fail("malformed column entry");
      }
      table.columns.push_back(std::move(col));
    }
    if (t.contains("primary_key") && t["primary_key"].is_array()) {
      for (const auto& k : t["primary_key"]) table.primary_key.push_back(k.get<std::string>());
    }
    try {
      catalog.AddTable(std::move(table));
    } catch (const SchemaParseError& e) {
      fail(e.what());
    }
  }
  return catalog;
}

SchemaCatalog LoadSchema(std::string_view input, SchemaFormat format,
                         std::string_view schema_id) {
  if (format == SchemaFormat::kAuto) {
    size_t first = input.find_first_not_of(" \t\r\n");
    format = (first != std::string_view::npos && input[first] == '{')
                 ? SchemaFormat::kJson
                 : SchemaFormat::kDdl;
  }
  if (format == SchemaFormat::kJson) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(input);
    } catch (const nlohmann::json::parse_error& e) {
      // byte offset -> line/column
      size_t offset = std::min<size_t>(e.byte, input.size());
      int line = 1, column = 1;
      for (size_t i = 0; i + 1 < offset; ++i) {
        if (input[i] == '\n') {
          ++line;
          column = 1;
        } else {
          ++column;
        }
      }
      throw SchemaParseError("invalid schema JSON", line, column);
    }
    return SchemaFromJson(j, schema_id);
  }
  return DdlParser(input, std::string(schema_id)).Run();
}

}  // namespace benchforge::sql
