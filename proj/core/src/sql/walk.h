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

#ifndef SRC_SQL_WALK_H_
#define SRC_SQL_WALK_H_

#include <type_traits>
#include <variant>

#include "benchforge/sql/ast.h"

// Shallow, textual-order traversal of one query level. Works on both const
// and mutable trees. The visitor receives:
//   OnCte(Cte&)                   each WITH entry
//   OnOperand(Box<Query>&)        parenthesized compound operand (same level)
//   OnTable(TableRef&)            leaf FROM item: TableName or DerivedTable
//   OnSubquery(Expr&)             InSubquery / Exists / ScalarSubquery node
//   OnColumn(ColumnRef&)          column references
//   OnCoreEnter(SelectCore&) / OnCoreExit(SelectCore&)
// The walker never descends into nested queries itself; visitors decide.

namespace benchforge::sql::walk {

template <typename T, typename U>
using Like = std::conditional_t<std::is_const_v<T>, const U, U>;

template <typename E, typename V>
void Expr(E& e, V& v);

template <typename R, typename V>
void Table(R& ref, V& v) {
  using JoinT = Like<R, Join>;
  if (auto* join = std::get_if<Join>(&ref.node)) {
    JoinT& j = *join;
    Table(*j.left, v);
    Table(*j.right, v);
    if (j.on) Expr(*j.on, v);
    return;
  }
  v.OnTable(ref);
}

template <typename C, typename V>
void Core(C& core, V& v) {
  v.OnCoreEnter(core);
  for (auto& item : core.items) Expr(item.expr, v);
  for (auto& t : core.from) Table(t, v);
  if (core.where) Expr(*core.where, v);
  for (auto& g : core.group_by) Expr(g, v);
  if (core.having) Expr(*core.having, v);
  v.OnCoreExit(core);
}

template <typename B, typename V>
void Body(B& body, V& v) {
  if (auto* core = std::get_if<SelectCore>(&body.node)) {
    Core(*core, v);
  } else if (auto* op = std::get_if<Box<SetOperation>>(&body.node)) {
    Body((**op).lhs, v);
    Body((**op).rhs, v);
  } else {
    v.OnOperand(*std::get_if<Box<sql::Query>>(&body.node));
  }
}

template <typename Q, typename V>
void Query(Q& q, V& v) {
  for (auto& cte : q.ctes) v.OnCte(cte);
  Body(q.body, v);
  for (auto& o : q.order_by) Expr(o.expr, v);
  if (q.limit) Expr(*q.limit, v);
  if (q.offset) Expr(*q.offset, v);
}

template <typename E, typename V>
void Expr(E& e, V& v) {
  bool is_subquery = false;
  std::visit(
      [&](auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ColumnRef>) {
          v.OnColumn(node);
        } else if constexpr (std::is_same_v<T, UnaryOp>) {
          Expr(*node.operand, v);
        } else if constexpr (std::is_same_v<T, BinaryOp>) {
          Expr(*node.lhs, v);
          Expr(*node.rhs, v);
        } else if constexpr (std::is_same_v<T, IsNull>) {
          Expr(*node.operand, v);
        } else if constexpr (std::is_same_v<T, sql::Like>) {
          Expr(*node.lhs, v);
          Expr(*node.pattern, v);
          if (node.escape) Expr(**node.escape, v);
        } else if constexpr (std::is_same_v<T, Between>) {
          Expr(*node.operand, v);
          Expr(*node.low, v);
          Expr(*node.high, v);
        } else if constexpr (std::is_same_v<T, InList>) {
          Expr(*node.lhs, v);
          for (auto& item : node.items) Expr(item, v);
        } else if constexpr (std::is_same_v<T, InSubquery>) {
          Expr(*node.lhs, v);
          is_subquery = true;
        } else if constexpr (std::is_same_v<T, Exists> ||
                             std::is_same_v<T, ScalarSubquery>) {
          is_subquery = true;
        } else if constexpr (std::is_same_v<T, Paren>) {
          Expr(*node.inner, v);
        } else if constexpr (std::is_same_v<T, Tuple>) {
          for (auto& item : node.items) Expr(item, v);
        } else if constexpr (std::is_same_v<T, FunctionCall>) {
          for (auto& arg : node.args) Expr(arg, v);
        } else if constexpr (std::is_same_v<T, Case>) {
          if (node.operand) Expr(**node.operand, v);
          for (auto& w : node.whens) {
            Expr(w.condition, v);
            Expr(w.result, v);
          }
          if (node.else_result) Expr(**node.else_result, v);
        } else if constexpr (std::is_same_v<T, Cast>) {
          Expr(*node.operand, v);
        } else if constexpr (std::is_same_v<T, Collate>) {
          Expr(*node.operand, v);
        }
      },
      e.node);
  // Called after the visit so the visitor may replace the node in place.
  if (is_subquery) v.OnSubquery(e);
}

// Returns the nested query held by an InSubquery/Exists/ScalarSubquery node.
template <typename E>
auto& SubqueryOf(E& e) {
  if (auto* in = std::get_if<InSubquery>(&e.node)) return *in->query;
  if (auto* ex = std::get_if<Exists>(&e.node)) return *ex->query;
  return *std::get_if<ScalarSubquery>(&e.node)->query;
}

// No-op base; visitors override what they need.
struct Visitor {
  template <typename T> void OnCte(T&) {}
  template <typename T> void OnOperand(T&) {}
  template <typename T> void OnTable(T&) {}
  template <typename T> void OnSubquery(T&) {}
  template <typename T> void OnColumn(T&) {}
  template <typename T> void OnCoreEnter(T&) {}
  template <typename T> void OnCoreExit(T&) {}
};

}  // namespace benchforge::sql::walk

#endif  // SRC_SQL_WALK_H_
