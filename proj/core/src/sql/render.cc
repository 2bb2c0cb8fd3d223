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

#include "benchforge/sql/render.h"

#include <array>
#include <string_view>

#include "benchforge/sql/lexer.h"
#include "src/sql/canonical_tokens.h"

namespace benchforge::sql {
namespace {

constexpr std::array<std::string_view, 16> kWindowWords = {
    "CURRENT", "EXCLUDE", "FIRST",     "FOLLOWING", "GROUPS", "LAST",
    "NO",      "NULLS",   "OTHERS",    "PARTITION", "PRECEDING", "RANGE",
    "ROW",     "ROWS",    "TIES",      "UNBOUNDED"};

template <typename T, typename F>
std::string JoinMapped(const std::vector<T>& items, std::string_view sep,
                       F&& fn) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += fn(items[i]);
  }
  return out;
}

class Renderer {
 public:
  std::string QueryText(const sql::Query& q) {
    std::string out;
    if (!q.ctes.empty()) {
      out += q.recursive ? "WITH RECURSIVE " : "WITH ";
      out += JoinMapped(q.ctes, ", ", [&](const Cte& cte) {
        std::string s = RenderIdentifier(cte.name);
        if (!cte.columns.empty()) {
          s += "(" + JoinMapped(cte.columns, ", ", RenderIdentifier) + ")";
        }
        return s + " AS (" + QueryText(*cte.query) + ")";
      });
      out += ' ';
    }
    out += BodyText(q.body);
    if (!q.order_by.empty()) {
      out += " ORDER BY ";
      out += JoinMapped(q.order_by, ", ", [&](const OrderItem& item) {
        std::string s = ExprText(item.expr);
        if (item.ascending) s += *item.ascending ? " ASC" : " DESC";
        if (item.nulls_first) s += *item.nulls_first ? " NULLS FIRST" : " NULLS LAST";
        return s;
      });
    }
    switch (q.limit_style) {
      case LimitStyle::kLimit:
        if (q.limit) out += " LIMIT " + ExprText(*q.limit);
        if (q.offset) out += " OFFSET " + ExprText(*q.offset);
        break;
      case LimitStyle::kLimitComma:
        out += " LIMIT " + ExprText(*q.offset) + ", " + ExprText(*q.limit);
        break;
      case LimitStyle::kFetchFirst:
        out += " FETCH FIRST " + ExprText(*q.limit) + " ROWS ONLY";
        break;
    }
    return out;
  }

  std::string BodyText(const QueryBody& body) {
    if (const auto* core = std::get_if<SelectCore>(&body.node)) return CoreText(*core);
    if (const auto* op = std::get_if<Box<SetOperation>>(&body.node)) {
      const SetOperation& set = **op;
      std::string out = BodyText(set.lhs);
      switch (set.op) {
        case SetOpKind::kUnion: out += " UNION "; break;
        case SetOpKind::kIntersect: out += " INTERSECT "; break;
        case SetOpKind::kExcept: out += " EXCEPT "; break;
        case SetOpKind::kMinus: out += " MINUS "; break;
      }
      if (set.all) out += "ALL ";
      return out + BodyText(set.rhs);
    }
    return "(" + QueryText(*std::get<Box<sql::Query>>(body.node)) + ")";
  }

  std::string CoreText(const SelectCore& core) {
    std::string out = "SELECT ";
    if (core.distinct) out += "DISTINCT ";
    if (core.all_keyword) out += "ALL ";
    out += JoinMapped(core.items, ", ", [&](const SelectItem& item) {
      std::string s = ExprText(item.expr);
      if (item.alias) s += " AS " + RenderIdentifier(*item.alias);
      return s;
    });
    if (!core.from.empty()) {
      out += " FROM ";
      out += JoinMapped(core.from, ", ", [&](const TableRef& t) { return TableText(t); });
    }
    if (core.where) out += " WHERE " + ExprText(*core.where);
    if (!core.group_by.empty()) {
      out += " GROUP BY ";
      out += JoinMapped(core.group_by, ", ", [&](const sql::Expr& e) { return ExprText(e); });
    }
    if (core.having) out += " HAVING " + ExprText(*core.having);
    return out;
  }

  std::string TableText(const TableRef& ref) {
    if (const auto* name = std::get_if<TableName>(&ref.node)) {
      std::string out = JoinMapped(name->parts, ".", RenderIdentifier);
      if (name->alias) out += " AS " + RenderIdentifier(*name->alias);
      return out;
    }
    if (const auto* derived = std::get_if<DerivedTable>(&ref.node)) {
      std::string out = "(" + QueryText(*derived->query) + ")";
      if (derived->alias) out += " AS " + RenderIdentifier(*derived->alias);
      return out;
    }
    const Join& join = std::get<Join>(ref.node);
    std::string out = TableText(*join.left) + " ";
    if (join.natural) out += "NATURAL ";
    switch (join.type) {
      case JoinType::kInner: out += join.inner_keyword ? "INNER " : ""; break;
      case JoinType::kLeft: out += "LEFT "; break;
      case JoinType::kRight: out += "RIGHT "; break;
      case JoinType::kFull: out += "FULL "; break;
      case JoinType::kCross: out += "CROSS "; break;
    }
    if (join.outer_keyword) out += "OUTER ";
    out += "JOIN " + TableText(*join.right);
    if (join.on) out += " ON " + ExprText(*join.on);
    if (!join.using_columns.empty()) {
      out += " USING (" + JoinMapped(join.using_columns, ", ", RenderIdentifier) + ")";
    }
    return out;
  }

  std::string ExprText(const sql::Expr& e) {
    return std::visit([&](const auto& node) { return Node(node); }, e.node);
  }

 private:
  std::string Node(const Literal& n) { return n.text; }
  std::string Node(const TypedLiteral& n) { return n.type + " " + n.text; }
  std::string Node(const ColumnRef& n) {
    return JoinMapped(n.parts, ".", RenderIdentifier);
  }
  std::string Node(const Star& n) {
    return n.qualifier ? RenderIdentifier(*n.qualifier) + ".*" : "*";
  }
  std::string Node(const UnaryOp& n) {
    std::string operand = ExprText(*n.operand);
    if (n.op == "NOT") return "NOT " + operand;
    // Keep "- -x" from turning into a line comment.
    if (!operand.empty() && (operand[0] == '-' || operand[0] == '+'))
      return n.op + " " + operand;
    return n.op + operand;
  }
  std::string Node(const BinaryOp& n) {
    return ExprText(*n.lhs) + " " + n.op + " " + ExprText(*n.rhs);
  }
  std::string Node(const IsNull& n) {
    return ExprText(*n.operand) + (n.negated ? " IS NOT NULL" : " IS NULL");
  }
  std::string Node(const Like& n) {
    std::string out = ExprText(*n.lhs) + (n.negated ? " NOT " : " ") + n.op + " " +
                      ExprText(*n.pattern);
    if (n.escape) out += " ESCAPE " + ExprText(**n.escape);
    return out;
  }
  std::string Node(const Between& n) {
    return ExprText(*n.operand) + (n.negated ? " NOT BETWEEN " : " BETWEEN ") +
           ExprText(*n.low) + " AND " + ExprText(*n.high);
  }
  std::string Node(const InList& n) {
    return ExprText(*n.lhs) + (n.negated ? " NOT IN (" : " IN (") +
           JoinMapped(n.items, ", ", [&](const sql::Expr& e) { return ExprText(e); }) +
           ")";
  }
  std::string Node(const InSubquery& n) {
    return ExprText(*n.lhs) + (n.negated ? " NOT IN (" : " IN (") +
           QueryText(*n.query) + ")";
  }
  std::string Node(const Exists& n) { return "EXISTS (" + QueryText(*n.query) + ")"; }
  std::string Node(const ScalarSubquery& n) { return "(" + QueryText(*n.query) + ")"; }
  std::string Node(const Paren& n) { return "(" + ExprText(*n.inner) + ")"; }
  std::string Node(const Tuple& n) {
    return "(" +
           JoinMapped(n.items, ", ", [&](const sql::Expr& e) { return ExprText(e); }) +
           ")";
  }
  std::string Node(const FunctionCall& n) {
    std::string out = RenderIdentifier(n.name) + "(";
    if (n.star) {
      out += "*";
    } else {
      if (n.distinct) out += "DISTINCT ";
      out += JoinMapped(n.args, ", ", [&](const sql::Expr& e) { return ExprText(e); });
    }
    out += ")";
    if (n.over) {
      out += n.over_named ? " OVER " + JoinCanonicalTokens(*n.over)
                          : " OVER (" + JoinCanonicalTokens(*n.over) + ")";
    }
    return out;
  }
  std::string Node(const Case& n) {
    std::string out = "CASE";
    if (n.operand) out += " " + ExprText(**n.operand);
    for (const auto& w : n.whens) {
      out += " WHEN " + ExprText(w.condition) + " THEN " + ExprText(w.result);
    }
    if (n.else_result) out += " ELSE " + ExprText(**n.else_result);
    return out + " END";
  }
  std::string Node(const Cast& n) {
    return "CAST(" + ExprText(*n.operand) + " AS " + n.type_name + ")";
  }
  std::string Node(const Collate& n) {
    return ExprText(*n.operand) + " COLLATE " + RenderIdentifier(n.collation);
  }
};

}  // namespace

std::string RenderIdentifier(const Identifier& id) {
  switch (id.quote) {
    case 0: return id.text;
    case '[': return "[" + id.text + "]";
    default: return std::string(1, id.quote) + id.text + id.quote;
  }
}

std::string RenderSql(const SqlAst& ast) { return Renderer().QueryText(ast.root); }
std::string RenderQuery(const Query& query) { return Renderer().QueryText(query); }
std::string RenderExpr(const Expr& expr) { return Renderer().ExprText(expr); }

std::string CanonicalTokenText(const Token& token) {
  switch (token.kind) {
    case TokenKind::kWord: {
      std::string upper = ToUpper(token.text);
      if (IsReservedKeyword(upper)) return upper;
      for (auto w : kWindowWords) {
        if (upper == w) return upper;
      }
      return token.text;
    }
    case TokenKind::kQuotedIdentifier:
      return RenderIdentifier(Identifier{token.text, token.quote});
    default:
      return token.text;
  }
}

std::string JoinCanonicalTokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    bool glue = i == 0 || t == ")" || t == "," || t == "." ||
                tokens[i - 1] == "(" || tokens[i - 1] == ".";
    if (!glue) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace benchforge::sql
