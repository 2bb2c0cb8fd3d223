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

#include "benchforge/sql/analysis.h"

#include <algorithm>

#include "benchforge/error.h"
#include "benchforge/sql/lexer.h"
#include "src/sql/walk.h"

namespace benchforge::sql {
namespace {

struct DepthVisitor : walk::Visitor {
  int depth = 0;

  void OnCte(const Cte& cte) { depth = std::max(depth, NestingDepth(*cte.query)); }
  void OnOperand(const Box<Query>& q) { depth = std::max(depth, NestingDepth(*q)); }
  void OnTable(const TableRef& ref) {
    if (const auto* d = std::get_if<DerivedTable>(&ref.node))
      depth = std::max(depth, 1 + NestingDepth(*d->query));
  }
  void OnSubquery(const Expr& e) {
    depth = std::max(depth, 1 + NestingDepth(walk::SubqueryOf(e)));
  }
};

bool ContainsIgnoreCase(const std::vector<std::string>& names,
                        std::string_view name) {
  return std::any_of(names.begin(), names.end(), [&](const std::string& n) {
    return EqualsIgnoreCase(n, name);
  });
}

void CollectTables(const Query& q, std::vector<std::string> scope,
                   std::vector<std::string>& out);

struct TablesVisitor : walk::Visitor {
  const std::vector<std::string>& scope;
  std::vector<std::string>& out;

  TablesVisitor(const std::vector<std::string>& s, std::vector<std::string>& o)
      : scope(s), out(o) {}

  void OnCte(const Cte& cte) { CollectTables(*cte.query, scope, out); }
  void OnOperand(const Box<Query>& q) { CollectTables(*q, scope, out); }
  void OnTable(const TableRef& ref) {
    if (const auto* d = std::get_if<DerivedTable>(&ref.node)) {
      CollectTables(*d->query, scope, out);
      return;
    }
    const auto& name = std::get<TableName>(ref.node);
    if (name.parts.size() == 1 && ContainsIgnoreCase(scope, name.parts[0].text))
      return;
    std::string full;
    for (const auto& p : name.parts) {
      if (!full.empty()) full += '.';
      full += p.text;
    }
    if (!ContainsIgnoreCase(out, full)) out.push_back(std::move(full));
  }
  void OnSubquery(const Expr& e) {
    CollectTables(walk::SubqueryOf(e), scope, out);
  }
};

void CollectTables(const Query& q, std::vector<std::string> scope,
                   std::vector<std::string>& out) {
  for (const auto& cte : q.ctes) scope.push_back(cte.name.text);
  TablesVisitor v(scope, out);
  walk::Query(q, v);
}

const SelectCore* FirstCore(const QueryBody& body) {
  if (const auto* core = std::get_if<SelectCore>(&body.node)) return core;
  if (const auto* op = std::get_if<Box<SetOperation>>(&body.node))
    return FirstCore((**op).lhs);
  return FirstCore((*std::get<Box<Query>>(body.node)).body);
}

}  // namespace

int NestingDepth(const Query& query) {
  DepthVisitor v;
  walk::Query(query, v);
  return v.depth;
}

std::vector<std::string> ReferencedTables(const Query& query) {
  std::vector<std::string> out;
  CollectTables(query, {}, out);
  return out;
}

std::vector<TableDef> ExtractTables(const SqlAst& ast,
                                    const SchemaCatalog& catalog) {
  std::vector<TableDef> tables;
  std::vector<std::string> unknown;
  for (const auto& name : ReferencedTables(ast)) {
    const TableDef* def = catalog.FindTable(name);
    if (!def) {
      unknown.push_back(name);
      continue;
    }
    bool seen = std::any_of(tables.begin(), tables.end(), [&](const TableDef& t) {
      return EqualsIgnoreCase(t.name, def->name);
    });
    if (!seen) tables.push_back(*def);
  }
  if (!unknown.empty()) throw UnknownTableError(std::move(unknown));
  return tables;
}

std::optional<std::vector<Identifier>> OutputColumnNames(const Query& query) {
  const SelectCore* core = FirstCore(query.body);
  std::vector<Identifier> names;
  for (const auto& item : core->items) {
    if (item.alias) {
      names.push_back(*item.alias);
    } else if (const auto* col = std::get_if<ColumnRef>(&item.expr.node)) {
      names.push_back(col->parts.back());
    } else {
      return std::nullopt;
    }
    for (size_t i = 0; i + 1 < names.size(); ++i) {
      if (EqualsIgnoreCase(names[i].text, names.back().text)) return std::nullopt;
    }
  }
  return names;
}

bool HasTopLevelOrderBy(const SqlAst& ast) { return !ast.root.order_by.empty(); }

bool HasTopLevelDistinct(const SqlAst& ast) {
  const auto* core = std::get_if<SelectCore>(&ast.root.body.node);
  return core && core->distinct;
}

}  // namespace benchforge::sql
