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

#include "benchforge/sql/parser.h"

#include <array>
#include <utility>
#include <vector>

#include "benchforge/error.h"
#include "benchforge/sql/lexer.h"
#include "src/sql/canonical_tokens.h"

namespace benchforge::sql {
namespace {

constexpr int kMaxDepth = 256;

constexpr std::array<std::string_view, 16> kNonSelectStatements = {
    "ALTER", "ANALYZE", "ATTACH", "CREATE",   "DELETE", "DROP",
    "EXPLAIN", "GRANT", "INSERT", "MERGE",    "PRAGMA", "REPLACE",
    "REVOKE", "TRUNCATE", "UPDATE", "VACUUM"};

class Parser {
 public:
  Parser(std::vector<Token> tokens, Dialect dialect)
      : tokens_(std::move(tokens)), dialect_(dialect) {}

  SqlAst ParseStatement() {
    const Token& first = Peek();
    if (first.kind == TokenKind::kEnd) Fail("empty statement");
    if (first.kind == TokenKind::kWord) {
      std::string upper = ToUpper(first.text);
      for (auto kw : kNonSelectStatements) {
        if (upper == kw) throw UnsupportedConstruct(upper + " statement");
      }
      if (upper == "VALUES") throw UnsupportedConstruct("VALUES statement");
    }
    SqlAst ast;
    ast.dialect = dialect_;
    ast.root = ParseQuery();
    AcceptPunct(';');
    if (Peek().kind != TokenKind::kEnd)
      Fail("unexpected token after end of statement");
    return ast;
  }

 private:
  // ---- token helpers -------------------------------------------------------

  const Token& Peek(size_t ahead = 0) const {
    size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }

  const Token& Consume() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  bool PeekKeyword(std::string_view kw, size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    return t.kind == TokenKind::kWord && EqualsIgnoreCase(t.text, kw);
  }

  bool AcceptKeyword(std::string_view kw) {
    if (!PeekKeyword(kw)) return false;
    Consume();
    return true;
  }

  void ExpectKeyword(std::string_view kw) {
    if (!AcceptKeyword(kw)) Fail("expected " + std::string(kw));
  }

  bool AcceptPunct(char c) {
    if (!Peek().IsPunct(c)) return false;
    Consume();
    return true;
  }

  void ExpectPunct(char c) {
    if (!AcceptPunct(c)) Fail(std::string("expected '") + c + "'");
  }

  bool AcceptOperator(std::string_view op) {
    if (!Peek().IsOperator(op)) return false;
    Consume();
    return true;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    const Token& t = Peek();
    std::string text = t.kind == TokenKind::kEnd ? "" : t.text;
    throw SyntaxError(message, t.line, t.column, text);
  }

  bool StartsQuery(size_t ahead) const {
    return PeekKeyword("SELECT", ahead) || PeekKeyword("WITH", ahead) ||
           PeekKeyword("VALUES", ahead);
  }

  // True for "(" followed by a query, looking through extra parentheses.
  bool AtParenthesizedQuery() const {
    size_t i = 0;
    while (Peek(i).IsPunct('(')) ++i;
    return i > 0 && StartsQuery(i);
  }

  struct DepthGuard {
    explicit DepthGuard(Parser* p) : parser(p) {
      if (++parser->depth_ > kMaxDepth) parser->Fail("nesting too deep");
    }
    ~DepthGuard() { --parser->depth_; }
    Parser* parser;
  };

  bool IsIdentifierToken(const Token& t) const {
    if (t.kind == TokenKind::kQuotedIdentifier) return true;
    return t.kind == TokenKind::kWord && !IsReservedKeyword(ToUpper(t.text));
  }

  Identifier ParseIdentifier(const char* what) {
    const Token& t = Peek();
    if (!IsIdentifierToken(t)) Fail(std::string("expected ") + what);
    CheckQuote(t);
    Consume();
    return Identifier{t.text, t.quote};
  }

  void CheckQuote(const Token& t) const {
    if (t.kind != TokenKind::kQuotedIdentifier) return;
    if (dialect_ == Dialect::kMitWarehouse && t.quote == '`')
      throw UnsupportedConstruct("backtick-quoted identifier");
    if (dialect_ == Dialect::kMitWarehouse && t.quote == '[')
      throw UnsupportedConstruct("bracket-quoted identifier");
  }

  std::optional<Identifier> ParseOptionalAlias() {
    if (AcceptKeyword("AS")) {
      const Token& t = Peek();
      if (t.kind == TokenKind::kString) {
        throw UnsupportedConstruct("string literal alias");
      }
      return ParseIdentifier("alias");
    }
    if (IsIdentifierToken(Peek())) return ParseIdentifier("alias");
    return std::nullopt;
  }

  // ---- queries -------------------------------------------------------------

  Query ParseQuery() {
    DepthGuard guard(this);
    Query q;
    if (AcceptKeyword("WITH")) {
      q.recursive = AcceptKeyword("RECURSIVE");
      do {
        Cte cte{ParseIdentifier("CTE name"), {}, Query{}};
        if (AcceptPunct('(')) {
          do {
            cte.columns.push_back(ParseIdentifier("column name"));
          } while (AcceptPunct(','));
          ExpectPunct(')');
        }
        ExpectKeyword("AS");
        if (PeekKeyword("MATERIALIZED") ||
            (PeekKeyword("NOT") && PeekKeyword("MATERIALIZED", 1))) {
          throw UnsupportedConstruct("MATERIALIZED hint");
        }
        ExpectPunct('(');
        *cte.query = ParseQuery();
        ExpectPunct(')');
        q.ctes.push_back(std::move(cte));
      } while (AcceptPunct(','));
    }
    q.body = ParseSetExpr();
    if (AcceptKeyword("ORDER")) {
      ExpectKeyword("BY");
      do {
        q.order_by.push_back(ParseOrderItem());
      } while (AcceptPunct(','));
    }
    if (AcceptKeyword("LIMIT")) {
      Expr first = ParseExpr();
      if (AcceptPunct(',')) {
        q.limit_style = LimitStyle::kLimitComma;
        q.offset = std::move(first);
        q.limit = ParseExpr();
      } else {
        q.limit = std::move(first);
        if (AcceptKeyword("OFFSET")) q.offset = ParseExpr();
      }
    } else if (PeekKeyword("FETCH")) {
      if (dialect_ == Dialect::kSqlite)
        throw UnsupportedConstruct("FETCH FIRST clause");
      Consume();
      if (!AcceptKeyword("FIRST") && !AcceptKeyword("NEXT"))
        Fail("expected FIRST or NEXT");
      q.limit = ParseExpr();
      if (!AcceptKeyword("ROWS") && !AcceptKeyword("ROW"))
        Fail("expected ROWS");
      ExpectKeyword("ONLY");
      q.limit_style = LimitStyle::kFetchFirst;
    } else if (PeekKeyword("OFFSET")) {
      Fail("OFFSET without LIMIT");
    }
    return q;
  }

  OrderItem ParseOrderItem() {
    OrderItem item{ParseExpr(), std::nullopt, std::nullopt};
    if (AcceptKeyword("ASC")) {
      item.ascending = true;
    } else if (AcceptKeyword("DESC")) {
      item.ascending = false;
    }
    if (AcceptKeyword("NULLS")) {
      if (AcceptKeyword("FIRST")) {
        item.nulls_first = true;
      } else if (AcceptKeyword("LAST")) {
        item.nulls_first = false;
      } else {
        Fail("expected FIRST or LAST");
      }
    }
    return item;
  }

  std::optional<std::pair<SetOpKind, bool>> AcceptSetOp() {
    SetOpKind kind;
    if (PeekKeyword("UNION")) {
      kind = SetOpKind::kUnion;
    } else if (PeekKeyword("INTERSECT")) {
      kind = SetOpKind::kIntersect;
    } else if (PeekKeyword("EXCEPT")) {
      kind = SetOpKind::kExcept;
    } else if (PeekKeyword("MINUS")) {
      if (dialect_ == Dialect::kSqlite)
        throw UnsupportedConstruct("MINUS set operator");
      kind = SetOpKind::kMinus;
    } else {
      return std::nullopt;
    }
    Consume();
    bool all = AcceptKeyword("ALL");
    if (!all && PeekKeyword("DISTINCT")) Consume();
    return std::make_pair(kind, all);
  }

  // Compound operators are left-associative with equal precedence, matching
  // the execution engine (SQLite).
  QueryBody ParseSetExpr() {
    QueryBody lhs = ParseSetOperand();
    while (auto op = AcceptSetOp()) {
      QueryBody rhs = ParseSetOperand();
      lhs = QueryBody{Box<SetOperation>(
          SetOperation{op->first, op->second, std::move(lhs), std::move(rhs)})};
    }
    return lhs;
  }

  QueryBody ParseSetOperand() {
    if (AtParenthesizedQuery()) {
      ExpectPunct('(');
      Query inner = ParseQuery();
      ExpectPunct(')');
      return QueryBody{Box<Query>(std::move(inner))};
    }
    if (PeekKeyword("VALUES")) throw UnsupportedConstruct("VALUES clause");
    return QueryBody{ParseSelectCore()};
  }

  SelectCore ParseSelectCore() {
    ExpectKeyword("SELECT");
    SelectCore core;
    if (PeekKeyword("TOP")) throw UnsupportedConstruct("TOP clause");
    if (AcceptKeyword("DISTINCT")) {
      if (PeekKeyword("ON")) throw UnsupportedConstruct("DISTINCT ON");
      core.distinct = true;
    } else if (AcceptKeyword("ALL")) {
      core.all_keyword = true;
    }
    do {
      SelectItem item{ParseExpr(), std::nullopt};
      if (!std::holds_alternative<Star>(item.expr.node)) {
        item.alias = ParseOptionalAlias();
      }
      core.items.push_back(std::move(item));
    } while (AcceptPunct(','));
    if (PeekKeyword("INTO")) throw UnsupportedConstruct("SELECT INTO");
    if (AcceptKeyword("FROM")) {
      do {
        core.from.push_back(ParseJoinedTable());
      } while (AcceptPunct(','));
    }
    if (AcceptKeyword("WHERE")) core.where = ParseExpr();
    if (AcceptKeyword("GROUP")) {
      ExpectKeyword("BY");
      if (PeekKeyword("ROLLUP") || PeekKeyword("CUBE") ||
          PeekKeyword("GROUPING")) {
        throw UnsupportedConstruct("grouping sets");
      }
      do {
        core.group_by.push_back(ParseExpr());
      } while (AcceptPunct(','));
    }
    if (AcceptKeyword("HAVING")) core.having = ParseExpr();
    if (PeekKeyword("WINDOW")) throw UnsupportedConstruct("WINDOW clause");
    if (PeekKeyword("QUALIFY")) throw UnsupportedConstruct("QUALIFY clause");
    if (PeekKeyword("CONNECT") || PeekKeyword("START"))
      throw UnsupportedConstruct("hierarchical query (CONNECT BY)");
    return core;
  }

  // ---- FROM ----------------------------------------------------------------

  std::optional<Join> AcceptJoinPrefix() {
    Join join{JoinType::kInner, false, false, false, Box<TableRef>(TableRef{}),
              Box<TableRef>(TableRef{}), std::nullopt, {}};
    size_t start = pos_;
    join.natural = AcceptKeyword("NATURAL");
    if (AcceptKeyword("INNER")) {
      join.inner_keyword = true;
    } else if (AcceptKeyword("LEFT")) {
      join.type = JoinType::kLeft;
      join.outer_keyword = AcceptKeyword("OUTER");
    } else if (AcceptKeyword("RIGHT")) {
      join.type = JoinType::kRight;
      join.outer_keyword = AcceptKeyword("OUTER");
    } else if (AcceptKeyword("FULL")) {
      join.type = JoinType::kFull;
      join.outer_keyword = AcceptKeyword("OUTER");
    } else if (AcceptKeyword("CROSS")) {
      join.type = JoinType::kCross;
    }
    if (!AcceptKeyword("JOIN")) {
      if (pos_ != start) Fail("expected JOIN");
      return std::nullopt;
    }
    return join;
  }

  TableRef ParseJoinedTable() {
    TableRef left = ParseTablePrimary();
    while (auto join = AcceptJoinPrefix()) {
      *join->left = std::move(left);
      *join->right = ParseTablePrimary();
      if (!join->natural && join->type != JoinType::kCross) {
        if (AcceptKeyword("ON")) {
          join->on = ParseExpr();
        } else if (AcceptKeyword("USING")) {
          ExpectPunct('(');
          do {
            join->using_columns.push_back(ParseIdentifier("column name"));
          } while (AcceptPunct(','));
          ExpectPunct(')');
        }
      }
      left = TableRef{std::move(*join)};
    }
    return left;
  }

  TableRef ParseTablePrimary() {
    if (Peek().IsPunct('(')) {
      if (!AtParenthesizedQuery())
        throw UnsupportedConstruct("parenthesized join");
      ExpectPunct('(');
      Query q = ParseQuery();
      ExpectPunct(')');
      auto alias = ParseOptionalAlias();
      if (alias && Peek().IsPunct('('))
        throw UnsupportedConstruct("derived table column list");
      return TableRef{DerivedTable{Box<Query>(std::move(q)), std::move(alias)}};
    }
    if (PeekKeyword("LATERAL")) throw UnsupportedConstruct("LATERAL");
    TableName name;
    name.parts.push_back(ParseIdentifier("table name"));
    while (AcceptPunct('.')) name.parts.push_back(ParseIdentifier("table name"));
    if (Peek().IsPunct('(')) throw UnsupportedConstruct("table-valued function");
    name.alias = ParseOptionalAlias();
    if (PeekKeyword("INDEXED")) throw UnsupportedConstruct("INDEXED BY");
    return TableRef{std::move(name)};
  }

  // ---- expressions ---------------------------------------------------------

  Expr ParseExpr() {
    DepthGuard guard(this);
    return ParseOr();
  }

  static Expr MakeBinary(std::string op, Expr lhs, Expr rhs) {
    return Expr{BinaryOp{std::move(op), std::move(lhs), std::move(rhs)}};
  }

  Expr ParseOr() {
    Expr lhs = ParseAnd();
    while (AcceptKeyword("OR")) lhs = MakeBinary("OR", std::move(lhs), ParseAnd());
    return lhs;
  }

  Expr ParseAnd() {
    Expr lhs = ParseNot();
    while (AcceptKeyword("AND")) lhs = MakeBinary("AND", std::move(lhs), ParseNot());
    return lhs;
  }

  Expr ParseNot() {
    if (AcceptKeyword("NOT")) {
      DepthGuard guard(this);
      return Expr{UnaryOp{"NOT", ParseNot()}};
    }
    return ParseComparison();
  }

  static bool IsLikeWord(const Token& t) {
    if (t.kind != TokenKind::kWord) return false;
    std::string u = ToUpper(t.text);
    return u == "LIKE" || u == "GLOB" || u == "ILIKE" || u == "REGEXP";
  }

  Expr ParseComparison() {
    Expr lhs = ParseBitwise();
    while (true) {
      const Token& t = Peek();
      if (t.kind == TokenKind::kOperator &&
          (t.text == "=" || t.text == "==" || t.text == "!=" ||
           t.text == "<>" || t.text == "<" || t.text == "<=" ||
           t.text == ">" || t.text == ">=")) {
        std::string op = Consume().text;
        lhs = MakeBinary(std::move(op), std::move(lhs), ParseBitwise());
        continue;
      }
      if (AcceptKeyword("ISNULL")) {
        lhs = Expr{IsNull{std::move(lhs), false}};
        continue;
      }
      if (AcceptKeyword("NOTNULL")) {
        lhs = Expr{IsNull{std::move(lhs), true}};
        continue;
      }
      if (AcceptKeyword("IS")) {
        bool negated = AcceptKeyword("NOT");
        if (AcceptKeyword("NULL")) {
          lhs = Expr{IsNull{std::move(lhs), negated}};
        } else if (AcceptKeyword("DISTINCT")) {
          ExpectKeyword("FROM");
          lhs = MakeBinary(negated ? "IS NOT DISTINCT FROM" : "IS DISTINCT FROM",
                           std::move(lhs), ParseBitwise());
        } else {
          lhs = MakeBinary(negated ? "IS NOT" : "IS", std::move(lhs),
                           ParseBitwise());
        }
        continue;
      }
      bool negated = false;
      if (PeekKeyword("NOT") &&
          (PeekKeyword("IN", 1) || PeekKeyword("BETWEEN", 1) ||
           IsLikeWord(Peek(1)))) {
        Consume();
        negated = true;
      }
      if (AcceptKeyword("IN")) {
        lhs = ParseInRhs(std::move(lhs), negated);
        continue;
      }
      if (AcceptKeyword("BETWEEN")) {
        Expr low = ParseBitwise();
        ExpectKeyword("AND");
        Expr high = ParseBitwise();
        lhs = Expr{Between{std::move(lhs), std::move(low), std::move(high),
                           negated}};
        continue;
      }
      if (IsLikeWord(Peek())) {
        std::string op = ToUpper(Consume().text);
        Like like{op, negated, std::move(lhs), ParseBitwise(), std::nullopt};
        if (AcceptKeyword("ESCAPE")) like.escape = Box<Expr>(ParseBitwise());
        lhs = Expr{std::move(like)};
        continue;
      }
      if (negated) Fail("expected IN, BETWEEN or LIKE after NOT");
      return lhs;
    }
  }

  Expr ParseInRhs(Expr lhs, bool negated) {
    if (!Peek().IsPunct('(')) {
      throw UnsupportedConstruct("IN without parenthesized list");
    }
    if (AtParenthesizedQuery() && StartsQuery(1)) {
      ExpectPunct('(');
      Query q = ParseQuery();
      ExpectPunct(')');
      return Expr{InSubquery{std::move(lhs), negated, std::move(q)}};
    }
    ExpectPunct('(');
    InList list{std::move(lhs), negated, {}};
    if (!Peek().IsPunct(')')) {
      do {
        list.items.push_back(ParseExpr());
      } while (AcceptPunct(','));
    }
    ExpectPunct(')');
    return Expr{std::move(list)};
  }

  Expr ParseBitwise() {
    Expr lhs = ParseAdditive();
    while (true) {
      const Token& t = Peek();
      if (t.kind == TokenKind::kOperator &&
          (t.text == "&" || t.text == "|" || t.text == "<<" || t.text == ">>")) {
        std::string op = Consume().text;
        lhs = MakeBinary(std::move(op), std::move(lhs), ParseAdditive());
      } else {
        return lhs;
      }
    }
  }

  Expr ParseAdditive() {
    Expr lhs = ParseMultiplicative();
    while (Peek().IsOperator("+") || Peek().IsOperator("-")) {
      std::string op = Consume().text;
      lhs = MakeBinary(std::move(op), std::move(lhs), ParseMultiplicative());
    }
    return lhs;
  }

  Expr ParseMultiplicative() {
    Expr lhs = ParseConcat();
    while (Peek().IsOperator("*") || Peek().IsOperator("/") ||
           Peek().IsOperator("%")) {
      std::string op = Consume().text;
      lhs = MakeBinary(std::move(op), std::move(lhs), ParseConcat());
    }
    return lhs;
  }

  Expr ParseConcat() {
    Expr lhs = ParseUnary();
    while (AcceptOperator("||")) lhs = MakeBinary("||", std::move(lhs), ParseUnary());
    return lhs;
  }

  Expr ParseUnary() {
    const Token& t = Peek();
    if (t.kind == TokenKind::kOperator &&
        (t.text == "-" || t.text == "+" || t.text == "~")) {
      std::string op = Consume().text;
      DepthGuard guard(this);
      return Expr{UnaryOp{std::move(op), ParseUnary()}};
    }
    return ParsePostfix();
  }

  Expr ParsePostfix() {
    Expr e = ParsePrimary();
    while (true) {
      if (AcceptKeyword("COLLATE")) {
        e = Expr{Collate{std::move(e), ParseIdentifier("collation name")}};
      } else if (Peek().IsOperator("::")) {
        throw UnsupportedConstruct(":: cast");
      } else if (Peek().IsPunct('(') && Peek(1).IsOperator("+") &&
                 Peek(2).IsPunct(')')) {
        throw UnsupportedConstruct("(+) outer join operator");
      } else {
        return e;
      }
    }
  }

  Expr ParsePrimary() {
    const Token& t = Peek();
    switch (t.kind) {
      case TokenKind::kNumber:
        Consume();
        return Expr{Literal{Literal::Kind::kNumber, t.text}};
      case TokenKind::kString:
        Consume();
        return Expr{Literal{Literal::Kind::kString, t.text}};
      case TokenKind::kParameter:
        Consume();
        return Expr{Literal{Literal::Kind::kParameter, t.text}};
      case TokenKind::kQuotedIdentifier:
        return ParseNameExpr();
      case TokenKind::kPunct:
        if (t.IsPunct('(')) return ParseParenthesized();
        break;
      case TokenKind::kOperator:
        if (t.text == "*") {
          Consume();
          return Expr{Star{}};
        }
        break;
      case TokenKind::kWord:
        return ParseWord();
      case TokenKind::kEnd:
        Fail("unexpected end of input");
    }
    Fail("unexpected token");
  }

  Expr ParseWord() {
    const Token& t = Peek();
    std::string upper = ToUpper(t.text);
    if (upper == "NULL") {
      Consume();
      return Expr{Literal{Literal::Kind::kNull, "NULL"}};
    }
    if (upper == "TRUE") {
      Consume();
      return Expr{Literal{Literal::Kind::kTrue, "TRUE"}};
    }
    if (upper == "FALSE") {
      Consume();
      return Expr{Literal{Literal::Kind::kFalse, "FALSE"}};
    }
    if (upper == "CASE") return ParseCase();
    if (upper == "CAST") return ParseCast();
    if (upper == "EXISTS") {
      Consume();
      ExpectPunct('(');
      Query q = ParseQuery();
      ExpectPunct(')');
      return Expr{Exists{std::move(q)}};
    }
    if ((upper == "DATE" || upper == "TIME" || upper == "TIMESTAMP" ||
         upper == "INTERVAL") &&
        Peek(1).kind == TokenKind::kString) {
      Consume();
      return Expr{TypedLiteral{upper, Consume().text}};
    }
    if ((upper == "LEFT" || upper == "RIGHT") && Peek(1).IsPunct('(')) {
      Consume();
      return ParseFunctionCall(Identifier{t.text, 0});
    }
    if (IsReservedKeyword(upper)) Fail("unexpected keyword");
    return ParseNameExpr();
  }

  Expr ParseNameExpr() {
    const Token& first = Peek();
    CheckQuote(first);
    Consume();
    Identifier head{first.text, first.quote};
    if (Peek().IsPunct('(') && first.kind == TokenKind::kWord) {
      return ParseFunctionCall(std::move(head));
    }
    ColumnRef ref;
    ref.parts.push_back(std::move(head));
    while (AcceptPunct('.')) {
      if (AcceptOperator("*")) {
        if (ref.parts.size() != 1)
          throw UnsupportedConstruct("schema-qualified star");
        return Expr{Star{std::move(ref.parts.front())}};
      }
      ref.parts.push_back(ParseIdentifier("column name"));
    }
    return Expr{std::move(ref)};
  }

  Expr ParseFunctionCall(Identifier name) {
    ExpectPunct('(');
    FunctionCall call;
    call.name = std::move(name);
    if (AcceptOperator("*")) {
      call.star = true;
    } else if (!Peek().IsPunct(')')) {
      if (AcceptKeyword("DISTINCT")) call.distinct = true;
      else AcceptKeyword("ALL");
      do {
        call.args.push_back(ParseExpr());
      } while (AcceptPunct(','));
    }
    ExpectPunct(')');
    if (PeekKeyword("FILTER")) throw UnsupportedConstruct("aggregate FILTER");
    if (PeekKeyword("WITHIN")) throw UnsupportedConstruct("WITHIN GROUP");
    if (AcceptKeyword("OVER")) {
      if (AcceptPunct('(')) {
        std::vector<std::string> tokens;
        int depth = 1;
        while (true) {
          const Token& t = Peek();
          if (t.kind == TokenKind::kEnd) Fail("unterminated OVER clause");
          if (t.IsPunct('(')) ++depth;
          if (t.IsPunct(')') && --depth == 0) {
            Consume();
            break;
          }
          tokens.push_back(CanonicalTokenText(t));
          Consume();
        }
        call.over = std::move(tokens);
      } else {
        Identifier window = ParseIdentifier("window name");
        call.over = std::vector<std::string>{RenderIdentifier(window)};
        call.over_named = true;
      }
    }
    return Expr{std::move(call)};
  }

  Expr ParseParenthesized() {
    if (AtParenthesizedQuery() && StartsQuery(1)) {
      ExpectPunct('(');
      Query q = ParseQuery();
      ExpectPunct(')');
      return Expr{ScalarSubquery{std::move(q)}};
    }
    ExpectPunct('(');
    Expr first = ParseExpr();
    if (AcceptPunct(',')) {
      Tuple tuple;
      tuple.items.push_back(std::move(first));
      do {
        tuple.items.push_back(ParseExpr());
      } while (AcceptPunct(','));
      ExpectPunct(')');
      return Expr{std::move(tuple)};
    }
    ExpectPunct(')');
    return Expr{Paren{std::move(first)}};
  }

  Expr ParseCase() {
    ExpectKeyword("CASE");
    Case c;
    if (!PeekKeyword("WHEN")) c.operand = Box<Expr>(ParseExpr());
    if (!PeekKeyword("WHEN")) Fail("expected WHEN");
    while (AcceptKeyword("WHEN")) {
      Expr cond = ParseExpr();
      ExpectKeyword("THEN");
      c.whens.push_back(CaseWhen{std::move(cond), ParseExpr()});
    }
    if (AcceptKeyword("ELSE")) c.else_result = Box<Expr>(ParseExpr());
    ExpectKeyword("END");
    return Expr{std::move(c)};
  }

  Expr ParseCast() {
    ExpectKeyword("CAST");
    ExpectPunct('(');
    Expr operand = ParseExpr();
    ExpectKeyword("AS");
    std::string type;
    while (Peek().kind == TokenKind::kWord) {
      if (!type.empty()) type += ' ';
      type += Consume().text;
    }
    if (type.empty()) Fail("expected type name");
    if (AcceptPunct('(')) {
      type += '(';
      bool first = true;
      do {
        const Token& t = Peek();
        if (t.kind != TokenKind::kNumber) Fail("expected type argument");
        if (!first) type += ", ";
        type += Consume().text;
        first = false;
      } while (AcceptPunct(','));
      ExpectPunct(')');
      type += ')';
    }
    ExpectPunct(')');
    return Expr{Cast{std::move(operand), std::move(type)}};
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  int depth_ = 0;
  Dialect dialect_;
};

}  // namespace

SqlAst ParseSql(std::string_view text, Dialect dialect) {
  Parser parser(Tokenize(text), dialect);
  return parser.ParseStatement();
}

std::string_view DialectName(Dialect dialect) {
  switch (dialect) {
    case Dialect::kGeneric:
      return "generic";
    case Dialect::kMitWarehouse:
      return "mit-warehouse";
    case Dialect::kSqlite:
      return "sqlite";
  }
  return "generic";
}

std::optional<Dialect> DialectFromName(std::string_view name) {
  std::string lower = ToLower(name);
  if (lower == "generic") return Dialect::kGeneric;
  if (lower == "mit-warehouse" || lower == "mit-warehouse-style" ||
      lower == "warehouse")
    return Dialect::kMitWarehouse;
  if (lower == "sqlite" || lower == "sqlite-style") return Dialect::kSqlite;
  return std::nullopt;
}

std::string LeadingKeyword(std::string_view statement) {
  std::vector<Token> tokens;
  try {
    tokens = Tokenize(statement);
  } catch (const SyntaxError&) {
    return "";
  }
  for (const auto& t : tokens) {
    if (t.IsPunct('(')) continue;
    if (t.kind == TokenKind::kWord) return ToUpper(t.text);
    return "";
  }
  return "";
}

}  // namespace benchforge::sql
