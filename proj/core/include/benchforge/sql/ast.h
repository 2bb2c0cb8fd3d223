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

#ifndef BENCHFORGE_SQL_AST_H_
#define BENCHFORGE_SQL_AST_H_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace benchforge::sql {

enum class Dialect { kGeneric, kMitWarehouse, kSqlite };

// Owning pointer with value semantics: copies are deep, equality compares the
// pointees. Lets the recursive AST stay a plain value type.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

// An identifier as written. |quote| is 0 for bare identifiers, otherwise the
// opening quote character ('"', '`' or '[').
struct Identifier {
  std::string text;
  char quote = 0;

  bool operator==(const Identifier&) const = default;
};

struct Expr;
struct Query;
struct TableRef;

struct Literal {
  enum class Kind { kNumber, kString, kNull, kTrue, kFalse, kParameter };
  Kind kind = Kind::kNumber;
  // Verbatim source text, including quotes for strings.
  std::string text;

  bool operator==(const Literal&) const = default;
};

// DATE '2024-01-01', TIMESTAMP '...', INTERVAL '...'.
struct TypedLiteral {
  std::string type;  // uppercase keyword
  std::string text;  // verbatim quoted string

  bool operator==(const TypedLiteral&) const = default;
};

struct ColumnRef {
  std::vector<Identifier> parts;  // [schema.][table.]column

  bool operator==(const ColumnRef&) const = default;
};

struct Star {
  std::optional<Identifier> qualifier;

  bool operator==(const Star&) const = default;
};

struct UnaryOp {
  std::string op;  // "-", "+", "~", "NOT"
  Box<Expr> operand;

  bool operator==(const UnaryOp&) const = default;
};

struct BinaryOp {
  std::string op;  // "AND", "OR", "=", "<>", "||", "IS", "IS NOT", ...
  Box<Expr> lhs;
  Box<Expr> rhs;

  bool operator==(const BinaryOp&) const = default;
};

struct IsNull {
  Box<Expr> operand;
  bool negated = false;

  bool operator==(const IsNull&) const = default;
};

struct Like {
  std::string op;  // "LIKE", "GLOB", "ILIKE", "REGEXP"
  bool negated = false;
  Box<Expr> lhs;
  Box<Expr> pattern;
  std::optional<Box<Expr>> escape;

  bool operator==(const Like&) const = default;
};

struct Between {
  Box<Expr> operand;
  Box<Expr> low;
  Box<Expr> high;
  bool negated = false;

  bool operator==(const Between&) const = default;
};

struct InList {
  Box<Expr> lhs;
  bool negated = false;
  std::vector<Expr> items;

  bool operator==(const InList&) const;
};

struct InSubquery {
  Box<Expr> lhs;
  bool negated = false;
  Box<Query> query;

  bool operator==(const InSubquery&) const = default;
};

struct Exists {
  Box<Query> query;

  bool operator==(const Exists&) const = default;
};

struct ScalarSubquery {
  Box<Query> query;

  bool operator==(const ScalarSubquery&) const = default;
};

struct Paren {
  Box<Expr> inner;

  bool operator==(const Paren&) const = default;
};

// Row value: (a, b).
struct Tuple {
  std::vector<Expr> items;

  bool operator==(const Tuple&) const;
};

struct FunctionCall {
  Identifier name;
  bool distinct = false;
  bool star = false;  // count(*)
  std::vector<Expr> args;
  // Window specification kept as canonical token text; window semantics are
  // not analyzed. Empty optional means no OVER clause. A named window
  // (OVER w) is stored as a single token with |over_named| set.
  std::optional<std::vector<std::string>> over;
  bool over_named = false;

  bool operator==(const FunctionCall&) const;
};

struct CaseWhen;

struct Case {
  std::optional<Box<Expr>> operand;
  std::vector<CaseWhen> whens;
  std::optional<Box<Expr>> else_result;

  bool operator==(const Case&) const;
};

struct Cast {
  Box<Expr> operand;
  std::string type_name;

  bool operator==(const Cast&) const = default;
};

struct Collate {
  Box<Expr> operand;
  Identifier collation;

  bool operator==(const Collate&) const = default;
};

struct Expr {
  std::variant<Literal, TypedLiteral, ColumnRef, Star, UnaryOp, BinaryOp,
               IsNull, Like, Between, InList, InSubquery, Exists,
               ScalarSubquery, Paren, Tuple, FunctionCall, Case, Cast, Collate>
      node;

  bool operator==(const Expr&) const = default;
};

struct CaseWhen {
  Expr condition;
  Expr result;

  bool operator==(const CaseWhen&) const = default;
};

inline bool InList::operator==(const InList& o) const {
  return lhs == o.lhs && negated == o.negated && items == o.items;
}
inline bool Tuple::operator==(const Tuple& o) const { return items == o.items; }
inline bool FunctionCall::operator==(const FunctionCall& o) const {
  return name == o.name && distinct == o.distinct && star == o.star &&
         args == o.args && over == o.over && over_named == o.over_named;
}
inline bool Case::operator==(const Case& o) const {
  return operand == o.operand && whens == o.whens &&
         else_result == o.else_result;
}

// ---- FROM clause -----------------------------------------------------------

struct TableName {
  std::vector<Identifier> parts;  // [schema.]table
  std::optional<Identifier> alias;

  bool operator==(const TableName&) const = default;
};

struct DerivedTable {
  Box<Query> query;
  std::optional<Identifier> alias;

  bool operator==(const DerivedTable&) const = default;
};

enum class JoinType { kInner, kLeft, kRight, kFull, kCross };

struct Join {
  JoinType type = JoinType::kInner;
  bool natural = false;
  bool inner_keyword = false;  // "INNER JOIN" written out
  bool outer_keyword = false;  // "LEFT OUTER JOIN" written out
  Box<TableRef> left;
  Box<TableRef> right;
  std::optional<Expr> on;
  std::vector<Identifier> using_columns;

  bool operator==(const Join&) const = default;
};

struct TableRef {
  std::variant<TableName, DerivedTable, Join> node;

  bool operator==(const TableRef&) const = default;
};

// ---- SELECT ----------------------------------------------------------------

struct SelectItem {
  Expr expr;
  std::optional<Identifier> alias;

  bool operator==(const SelectItem&) const = default;
};

struct SelectCore {
  bool distinct = false;
  bool all_keyword = false;
  std::vector<SelectItem> items;
  std::vector<TableRef> from;
  std::optional<Expr> where;
  std::vector<Expr> group_by;
  std::optional<Expr> having;

  bool operator==(const SelectCore&) const = default;
};

enum class SetOpKind { kUnion, kIntersect, kExcept, kMinus };

struct SetOperation;

// A query body is a select core, a compound (set operation), or a
// parenthesized query used as a compound operand.
struct QueryBody {
  std::variant<SelectCore, Box<SetOperation>, Box<Query>> node;

  bool operator==(const QueryBody&) const = default;
};

struct SetOperation {
  SetOpKind op = SetOpKind::kUnion;
  bool all = false;
  QueryBody lhs;
  QueryBody rhs;

  bool operator==(const SetOperation&) const = default;
};

struct OrderItem {
  Expr expr;
  std::optional<bool> ascending;        // explicit ASC / DESC
  std::optional<bool> nulls_first;      // explicit NULLS FIRST / LAST

  bool operator==(const OrderItem&) const = default;
};

struct Cte {
  Identifier name;
  std::vector<Identifier> columns;
  Box<Query> query;

  bool operator==(const Cte&) const = default;
};

enum class LimitStyle { kLimit, kLimitComma, kFetchFirst };

struct Query {
  bool recursive = false;
  std::vector<Cte> ctes;
  QueryBody body;
  std::vector<OrderItem> order_by;
  std::optional<Expr> limit;
  std::optional<Expr> offset;
  LimitStyle limit_style = LimitStyle::kLimit;

  bool operator==(const Query&) const = default;
};

// A parsed SELECT statement.
struct SqlAst {
  Query root;
  Dialect dialect = Dialect::kGeneric;

  // Structural equality ignores the dialect tag.
  bool operator==(const SqlAst& o) const { return root == o.root; }
};

}  // namespace benchforge::sql

#endif  // BENCHFORGE_SQL_AST_H_
