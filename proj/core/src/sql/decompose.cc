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
#include "benchforge/sql/decompose.h"

#include <algorithm>
#include <array>
#include <functional>

#include "benchforge/error.h"
#include "benchforge/sql/analysis.h"
#include "benchforge/sql/lexer.h"
#include "benchforge/sql/parser.h"
#include "benchforge/sql/render.h"
#include "src/sql/walk.h"

namespace benchforge::sql {
namespace {

// Bare words that parse as column references but name no column.
constexpr std::array<std::string_view, 8> kNiladic = {
    "CURRENT_DATE", "CURRENT_TIME", "CURRENT_TIMESTAMP", "LOCALTIME",
    "LOCALTIMESTAMP", "ROWID", "ROWNUM", "SYSDATE"};

bool ContainsIgnoreCase(const std::vector<std::string>& names,
                        std::string_view name) {
  return std::any_of(names.begin(), names.end(), [&](const std::string& n) {
    return EqualsIgnoreCase(n, name);
  });
}

// Names bound by one select core.
struct Scope {
  std::vector<std::string> qualifiers;
  std::vector<std::string> columns;
  bool columns_known = true;
};

// ---- Correlation ------------------------------------------------------------

class FreeRefFinder {
 public:
  explicit FreeRefFinder(const SchemaCatalog* catalog) : catalog_(catalog) {}

  // True when |q| references a name not bound inside |q| itself.
  bool HasFreeReference(const Query& q) {
    std::vector<Scope> stack;
    std::vector<std::string> ctes;
    return Visit(q, stack, ctes);
  }

 private:
  struct V : walk::Visitor {
    FreeRefFinder* self;
    std::vector<Scope>& stack;
    std::vector<std::string>& ctes;
    size_t query_base;
    bool free = false;

    V(FreeRefFinder* s, std::vector<Scope>& st, std::vector<std::string>& c)
        : self(s), stack(st), ctes(c), query_base(st.size()) {}

    void OnCte(const Cte& cte) {
      free |= self->Visit(*cte.query, stack, ctes);
      ctes.push_back(cte.name.text);
    }
    void OnOperand(const Box<sql::Query>& q) {
      free |= self->Visit(*q, stack, ctes);
    }
    void OnTable(const TableRef& ref) {
      if (const auto* d = std::get_if<DerivedTable>(&ref.node))
        free |= self->Visit(*d->query, stack, ctes);
    }
    void OnSubquery(const sql::Expr& e) {
      free |= self->Visit(walk::SubqueryOf(e), stack, ctes);
    }
    void OnCoreEnter(const SelectCore& core) {
      // Cores of one compound replace each other; ORDER BY sees the last.
      stack.resize(query_base);
      stack.push_back(self->BuildScope(core, ctes));
    }
    void OnColumn(const ColumnRef& col) {
      if (!self->Resolves(col, stack)) free = true;
    }
  };

  bool Visit(const Query& q, std::vector<Scope>& stack,
             std::vector<std::string>& ctes) {
    size_t base = stack.size();
    size_t cte_base = ctes.size();
    V v(this, stack, ctes);
    walk::Query(q, v);
    stack.resize(base);
    ctes.resize(cte_base);
    return v.free;
  }

  void AddSource(const TableRef& ref, const std::vector<std::string>& ctes,
                 Scope& scope) {
    if (const auto* join = std::get_if<Join>(&ref.node)) {
      AddSource(*join->left, ctes, scope);
      AddSource(*join->right, ctes, scope);
      return;
    }
    if (const auto* d = std::get_if<DerivedTable>(&ref.node)) {
      if (d->alias) scope.qualifiers.push_back(d->alias->text);
      auto names = OutputColumnNames(*d->query);
      if (names) {
        for (const auto& n : *names) scope.columns.push_back(n.text);
      } else {
        scope.columns_known = false;
      }
      return;
    }
    const auto& name = std::get<TableName>(ref.node);
    scope.qualifiers.push_back(name.alias ? name.alias->text
                                          : name.parts.back().text);
    std::string full;
    for (const auto& p : name.parts) {
      if (!full.empty()) full += '.';
      full += p.text;
    }
    const TableDef* def = nullptr;
    bool is_cte = name.parts.size() == 1 && ContainsIgnoreCase(ctes, full);
    if (catalog_ && !is_cte) def = catalog_->FindTable(full);
    if (!def) {
      scope.columns_known = false;
      return;
    }
    for (const auto& c : def->columns) scope.columns.push_back(c.name);
  }

  Scope BuildScope(const SelectCore& core,
                   const std::vector<std::string>& ctes) {
    Scope scope;
    for (const auto& t : core.from) AddSource(t, ctes, scope);
    for (const auto& item : core.items) {
      if (item.alias) scope.columns.push_back(item.alias->text);
    }
    return scope;
  }

  bool Resolves(const ColumnRef& col, const std::vector<Scope>& stack) const {
    if (col.parts.size() >= 2) {
      const std::string& q = col.parts[col.parts.size() - 2].text;
      return std::any_of(stack.begin(), stack.end(), [&](const Scope& s) {
        return ContainsIgnoreCase(s.qualifiers, q);
      });
    }
    if (!catalog_) return true;
    const Identifier& name = col.parts.back();
    if (name.quote == 0) {
      std::string upper = ToUpper(name.text);
      for (auto n : kNiladic) {
        if (upper == n) return true;
      }
    }
    return std::any_of(stack.begin(), stack.end(), [&](const Scope& s) {
      return !s.columns_known || ContainsIgnoreCase(s.columns, name.text);
    });
  }

  const SchemaCatalog* catalog_;
};

// Calls |fn| on every nested query (derived tables and expression
// subqueries) at any depth. CTE bodies and compound operands are searched
// but not reported.
void ForEachSubquery(const Query& q,
                     const std::function<void(const Query&)>& fn) {
  struct V : walk::Visitor {
    const std::function<void(const Query&)>& fn;
    explicit V(const std::function<void(const Query&)>& f) : fn(f) {}
    void OnCte(const Cte& cte) { ForEachSubquery(*cte.query, fn); }
    void OnOperand(const Box<sql::Query>& q) { ForEachSubquery(*q, fn); }
    void OnTable(const TableRef& ref) {
      if (const auto* d = std::get_if<DerivedTable>(&ref.node)) {
        fn(*d->query);
        ForEachSubquery(*d->query, fn);
      }
    }
    void OnSubquery(const sql::Expr& e) {
      fn(walk::SubqueryOf(e));
      ForEachSubquery(walk::SubqueryOf(e), fn);
    }
  };
  V v(fn);
  walk::Query(q, v);
}

// ---- Hoisting ---------------------------------------------------------------

using Renames = std::vector<std::pair<std::string, std::string>>;

Query SelectFromStep(const std::string& step,
                     const std::optional<std::vector<Identifier>>& columns) {
  SelectCore core;
  if (columns) {
    for (const auto& c : *columns) {
      core.items.push_back(SelectItem{sql::Expr{ColumnRef{{c}}}, std::nullopt});
    }
  } else {
    core.items.push_back(SelectItem{sql::Expr{Star{}}, std::nullopt});
  }
  core.from.push_back(TableRef{TableName{{Identifier{step}}, std::nullopt}});
  Query q;
  q.body.node = std::move(core);
  return q;
}

class Hoister {
 public:
  explicit Hoister(std::vector<DecompositionStep>& steps) : steps_(steps) {}

  // Flattens |q| in place; every nested query becomes a step.
  void Flatten(Query& q, Renames renames) {
    if (q.recursive) throw UnsupportedConstruct("recursive CTE decomposition");
    for (auto& cte : q.ctes) {
      if (!cte.columns.empty())
        throw UnsupportedConstruct("CTE column list in decomposition");
      Query body = std::move(*cte.query);
      Flatten(body, renames);
      renames.emplace_back(cte.name.text, AddStep(std::move(body)));
    }
    q.ctes.clear();
    V v(this, renames);
    walk::Query(q, v);
  }

 private:
  struct V : walk::Visitor {
    Hoister* self;
    const Renames& renames;

    V(Hoister* h, const Renames& r) : self(h), renames(r) {}

    void OnOperand(Box<sql::Query>& q) { self->Flatten(*q, renames); }
    void OnTable(TableRef& ref) {
      if (auto* d = std::get_if<DerivedTable>(&ref.node)) {
        Query sub = std::move(*d->query);
        self->Flatten(sub, renames);
        std::string step = self->AddStep(std::move(sub));
        std::optional<Identifier> alias = d->alias;
        ref.node = TableName{{Identifier{step}}, std::move(alias)};
        return;
      }
      auto& name = std::get<TableName>(ref.node);
      if (name.parts.size() != 1) return;
      for (auto it = renames.rbegin(); it != renames.rend(); ++it) {
        if (!EqualsIgnoreCase(it->first, name.parts[0].text)) continue;
        if (!name.alias) name.alias = name.parts[0];
        name.parts[0] = Identifier{it->second};
        return;
      }
    }
    void OnSubquery(sql::Expr& e) {
      Query& sub = walk::SubqueryOf(e);
      self->Flatten(sub, renames);
      auto columns = OutputColumnNames(sub);
      std::string step = self->AddStep(std::move(sub));
      sub = SelectFromStep(step, columns);
    }
  };

  std::string AddStep(Query body) {
    DecompositionStep step;
    step.cte_name = "step_" + std::to_string(steps_.size() + 1);
    for (const auto& t : ReferencedTables(body)) {
      for (const auto& s : steps_) {
        if (EqualsIgnoreCase(s.cte_name, t)) step.depends_on.insert(s.cte_name);
      }
    }
    step.subquery = std::move(body);
    steps_.push_back(std::move(step));
    return steps_.back().cte_name;
  }

  std::vector<DecompositionStep>& steps_;
};

bool IsStepName(std::string_view name) {
  if (name.size() <= 5 || name.substr(0, 5) != "step_") return false;
  return std::all_of(name.begin() + 5, name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

bool IsStepStub(const Query& q) {
  const auto* core = std::get_if<SelectCore>(&q.body.node);
  if (!core || !q.ctes.empty() || !q.order_by.empty() || q.limit) return false;
  if (core->where || core->having || !core->group_by.empty()) return false;
  if (core->from.size() != 1) return false;
  const auto* name = std::get_if<TableName>(&core->from[0].node);
  if (!name || name->parts.size() != 1 || !IsStepName(name->parts[0].text))
    return false;
  return std::all_of(core->items.begin(), core->items.end(), [](const SelectItem& i) {
    return std::holds_alternative<ColumnRef>(i.expr.node) ||
           std::holds_alternative<Star>(i.expr.node);
  });
}

struct ResidualVisitor : walk::Visitor {
  int depth = 0;

  void OnCte(const Cte& cte) { depth = std::max(depth, ResidualDepth(*cte.query)); }
  void OnOperand(const Box<sql::Query>& q) { depth = std::max(depth, ResidualDepth(*q)); }
  void OnTable(const TableRef& ref) {
    if (const auto* d = std::get_if<DerivedTable>(&ref.node))
      depth = std::max(depth, 1 + ResidualDepth(*d->query));
  }
  void OnSubquery(const sql::Expr& e) {
    const Query& sub = walk::SubqueryOf(e);
    if (!IsStepStub(sub)) depth = std::max(depth, 1 + ResidualDepth(sub));
  }
};

}  // namespace

int ResidualDepth(const Query& query) {
  ResidualVisitor v;
  walk::Query(query, v);
  return v.depth;
}

std::optional<std::string> FindCorrelatedSubquery(const SqlAst& ast,
                                                  const SchemaCatalog* catalog) {
  std::optional<std::string> found;
  FreeRefFinder finder(catalog);
  ForEachSubquery(ast.root, [&](const Query& sub) {
    if (!found && finder.HasFreeReference(sub)) found = RenderQuery(sub);
  });
  return found;
}

DecompositionPlan Decompose(const SqlAst& ast, const SchemaCatalog* catalog) {
  if (NestingDepth(ast) == 0)
    throw Error(ErrorCode::kNotNested, "query has no nested subquery");
  if (auto sub = FindCorrelatedSubquery(ast, catalog)) {
    throw Error(ErrorCode::kCorrelatedSubquery,
                "correlated subquery cannot be decomposed: " + *sub);
  }
  DecompositionPlan plan;
  plan.dialect = ast.dialect;
  plan.final = ast.root;
  Hoister(plan.steps).Flatten(plan.final, {});
  return plan;
}

Query PlanToQuery(const DecompositionPlan& plan) {
  Query q = plan.final;
  q.recursive = false;
  q.ctes.clear();
  for (const auto& step : plan.steps) {
    q.ctes.push_back(Cte{Identifier{step.cte_name}, {}, step.subquery});
  }
  return q;
}

std::string PlanToSql(const DecompositionPlan& plan) {
  return RenderQuery(PlanToQuery(plan));
}

nlohmann::json PlanToJson(const DecompositionPlan& plan) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : plan.steps) {
    steps.push_back({{"cte_name", step.cte_name},
                     {"sql", RenderQuery(step.subquery)},
                     {"depends_on", step.depends_on}});
  }
  return {{"steps", std::move(steps)}, {"final", RenderQuery(plan.final)}};
}

DecompositionPlan PlanFromJson(const nlohmann::json& j, Dialect dialect) {
  DecompositionPlan plan;
  plan.dialect = dialect;
  for (const auto& s : j.at("steps")) {
    DecompositionStep step;
    step.cte_name = s.at("cte_name").get<std::string>();
    step.subquery = ParseSql(s.at("sql").get<std::string>(), dialect).root;
    step.depends_on = s.at("depends_on").get<std::set<std::string>>();
    plan.steps.push_back(std::move(step));
  }
  plan.final = ParseSql(j.at("final").get<std::string>(), dialect).root;
  return plan;
}

}  // namespace benchforge::sql
