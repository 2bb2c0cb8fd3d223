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

#include "src/generation/phrasing.h"

#include <algorithm>
#include <cctype>
#include <regex>

#include "benchforge/sql/analysis.h"
#include "benchforge/sql/lexer.h"
#include "src/sql/walk.h"

namespace benchforge::generation::phrasing {
namespace {

using sql::Expr;

struct Aggregate {
  std::string_view function;
  std::string_view phrase;
};

constexpr Aggregate kAggregates[] = {{"COUNT", "the count of "},
                                     {"SUM", "the total of "},
                                     {"AVG", "the average of "},
                                     {"MIN", "the minimum of "},
                                     {"MAX", "the maximum of "}};

struct Comparison {
  std::string_view op;
  std::string_view phrase;
};

// Parsing tries these in order, so the bare "is" comes last.
constexpr Comparison kComparisons[] = {{"<", " is less than "},
                                       {"<=", " is at most "},
                                       {">", " is greater than "},
                                       {">=", " is at least "},
                                       {"<>", " is not "},
                                       {"!=", " is not "},
                                       {"=", " is "}};

std::string ListPhrase(const std::vector<std::string>& items) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += i + 1 == items.size() ? " and " : ", ";
    out += items[i];
  }
  return out;
}

bool IsBareWord(const sql::Identifier& id) {
  if (id.quote || id.text.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(id.text[0])) && id.text[0] != '_')
    return false;
  return std::all_of(id.text.begin(), id.text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool IsStepName(std::string_view name) {
  static const std::regex re("step_[0-9]+");
  return std::regex_match(name.begin(), name.end(), re);
}

// SELECT col|* FROM step_k with nothing else: a substituted subquery.
std::optional<std::string> StepStub(const sql::Query& q) {
  if (!q.ctes.empty() || !q.order_by.empty() || q.limit) return std::nullopt;
  const auto* core = std::get_if<sql::SelectCore>(&q.body.node);
  if (!core || core->from.size() != 1 || core->where || !core->group_by.empty() ||
      core->having || core->items.size() != 1 || core->distinct)
    return std::nullopt;
  const auto* t = std::get_if<sql::TableName>(&core->from[0].node);
  if (!t || t->parts.size() != 1 || !IsStepName(t->parts[0].text)) return std::nullopt;
  const auto& e = core->items[0].expr.node;
  if (!std::holds_alternative<sql::Star>(e) && !std::holds_alternative<sql::ColumnRef>(e))
    return std::nullopt;
  return t->parts[0].text;
}

class ExactDescriber {
 public:
  std::optional<std::string> Describe(const sql::Query& q) {
    if (!q.ctes.empty()) return std::nullopt;
    const auto* core = std::get_if<sql::SelectCore>(&q.body.node);
    if (!core || core->from.size() != 1) return std::nullopt;
    const auto* table = std::get_if<sql::TableName>(&core->from[0].node);
    if (!table || table->parts.size() != 1 || !IsBareWord(table->parts[0]))
      return std::nullopt;
    table_ = table->parts[0].text;
    if (table->alias) alias_ = table->alias->text;

    std::string out = core->distinct ? "distinct " : "";
    std::vector<std::string> items;
    if (core->items.size() == 1 && std::holds_alternative<sql::Star>(core->items[0].expr.node)) {
      if (std::get<sql::Star>(core->items[0].expr.node).qualifier) return std::nullopt;
      items.push_back("all columns");
      item_phrases_.push_back("all columns");
    } else {
      for (const auto& item : core->items) {
        auto p = Term(item.expr);
        if (!p) return std::nullopt;
        item_phrases_.push_back(*p);
        if (item.alias && !sql::EqualsIgnoreCase(item.alias->text, *p)) {
          if (!IsBareWord(*item.alias)) return std::nullopt;
          *p += " as " + item.alias->text;
        }
        items.push_back(*p);
      }
    }
    out += ListPhrase(items) + " from " + table_;
    if (core->where) {
      auto c = Conditions(*core->where);
      if (!c) return std::nullopt;
      out += " where " + *c;
    }
    if (!core->group_by.empty()) {
      std::vector<std::string> keys;
      for (const auto& g : core->group_by) {
        auto p = Term(g);
        if (!p) return std::nullopt;
        keys.push_back(*p);
      }
      out += ", grouped by " + ListPhrase(keys);
    }
    if (core->having) {
      auto c = Conditions(*core->having);
      if (!c) return std::nullopt;
      out += ", keeping groups where " + *c;
    }
    if (!q.order_by.empty()) {
      out += ", sorted by ";
      for (size_t i = 0; i < q.order_by.size(); ++i) {
        const auto& o = q.order_by[i];
        if (o.nulls_first) return std::nullopt;
        auto p = OrderTerm(o.expr, *core);
        if (!p) return std::nullopt;
        if (i) out += " then by ";
        out += *p;
        if (o.ascending) out += *o.ascending ? " in ascending order" : " in descending order";
      }
    }
    if (q.limit) {
      auto n = Number(*q.limit);
      if (!n) return std::nullopt;
      out += ", keeping only the first " + *n + " rows";
      if (q.offset) {
        auto m = Number(*q.offset);
        if (!m) return std::nullopt;
        out += " after skipping " + *m + " rows";
      }
    }
    return out;
  }

 private:
  std::optional<std::string> Column(const Expr& e) {
    const auto* col = std::get_if<sql::ColumnRef>(&e.node);
    if (!col || col->parts.size() > 2 || !IsBareWord(col->parts.back()))
      return std::nullopt;
    if (col->parts.size() == 2) {
      const std::string& q = col->parts[0].text;
      if (!sql::EqualsIgnoreCase(q, alias_.empty() ? table_ : alias_)) return std::nullopt;
    }
    return col->parts.back().text;
  }

  std::optional<std::string> Term(const Expr& e) {
    if (const auto* f = std::get_if<sql::FunctionCall>(&e.node)) {
      if (f->over) return std::nullopt;
      std::string name = sql::ToUpper(f->name.text);
      if (f->star) {
        if (name != "COUNT") return std::nullopt;
        return std::string("the number of rows");
      }
      if (f->args.size() != 1) return std::nullopt;
      auto arg = Column(f->args[0]);
      if (!arg) return std::nullopt;
      if (f->distinct) {
        if (name != "COUNT") return std::nullopt;
        return "the number of distinct " + *arg;
      }
      for (const auto& a : kAggregates) {
        if (name == a.function) return std::string(a.phrase) + *arg;
      }
      return std::nullopt;
    }
    return Column(e);
  }

  // ORDER BY may name a select alias or position.
  std::optional<std::string> OrderTerm(const Expr& e, const sql::SelectCore& core) {
    if (const auto* col = std::get_if<sql::ColumnRef>(&e.node); col && col->parts.size() == 1) {
      for (size_t i = 0; i < core.items.size(); ++i) {
        const auto& alias = core.items[i].alias;
        if (alias && sql::EqualsIgnoreCase(alias->text, col->parts[0].text) &&
            i < item_phrases_.size() && item_phrases_[i] != "all columns")
          return item_phrases_[i];
      }
    }
    if (const auto* lit = std::get_if<sql::Literal>(&e.node);
        lit && lit->kind == sql::Literal::Kind::kNumber) {
      size_t pos = std::strtoul(lit->text.c_str(), nullptr, 10);
      if (pos >= 1 && pos <= item_phrases_.size() && item_phrases_[pos - 1] != "all columns")
        return item_phrases_[pos - 1];
      return std::nullopt;
    }
    return Term(e);
  }

  static std::optional<std::string> Number(const Expr& e) {
    const auto* lit = std::get_if<sql::Literal>(&e.node);
    if (!lit || lit->kind != sql::Literal::Kind::kNumber) return std::nullopt;
    return lit->text;
  }

  static std::optional<std::string> Value(const Expr& e) {
    if (const auto* lit = std::get_if<sql::Literal>(&e.node)) {
      if (lit->kind == sql::Literal::Kind::kParameter) return std::nullopt;
      return lit->text;
    }
    if (const auto* u = std::get_if<sql::UnaryOp>(&e.node); u && u->op == "-") {
      auto n = Number(*u->operand);
      if (n) return "-" + *n;
      return std::nullopt;
    }
    if (const auto* s = std::get_if<sql::ScalarSubquery>(&e.node)) {
      auto step = StepStub(*s->query);
      if (step) return "the value of " + *step;
    }
    return std::nullopt;
  }

  void Conjuncts(const Expr& e, std::vector<const Expr*>& out) {
    if (const auto* b = std::get_if<sql::BinaryOp>(&e.node); b && b->op == "AND") {
      Conjuncts(*b->lhs, out);
      Conjuncts(*b->rhs, out);
      return;
    }
    if (const auto* p = std::get_if<sql::Paren>(&e.node)) {
      Conjuncts(*p->inner, out);
      return;
    }
    out.push_back(&e);
  }

  std::optional<std::string> Conditions(const Expr& e) {
    std::vector<const Expr*> parts;
    Conjuncts(e, parts);
    std::string out;
    for (const Expr* p : parts) {
      auto c = Condition(*p);
      if (!c) return std::nullopt;
      if (!out.empty()) out += " and ";
      out += *c;
    }
    return out;
  }

  std::optional<std::string> Condition(const Expr& e) {
    if (const auto* b = std::get_if<sql::BinaryOp>(&e.node)) {
      auto lhs = Term(*b->lhs);
      auto rhs = Value(*b->rhs);
      if (!lhs || !rhs) return std::nullopt;
      for (const auto& c : kComparisons) {
        if (b->op == c.op) return *lhs + std::string(c.phrase) + *rhs;
      }
      return std::nullopt;
    }
    if (const auto* n = std::get_if<sql::IsNull>(&e.node)) {
      auto lhs = Term(*n->operand);
      if (!lhs) return std::nullopt;
      return *lhs + (n->negated ? " is present" : " is missing");
    }
    if (const auto* l = std::get_if<sql::Like>(&e.node)) {
      if (sql::ToUpper(l->op) != "LIKE" || l->escape) return std::nullopt;
      auto lhs = Term(*l->lhs);
      auto pat = Value(*l->pattern);
      if (!lhs || !pat) return std::nullopt;
      return *lhs + (l->negated ? " does not match " : " matches ") + *pat;
    }
    if (const auto* b = std::get_if<sql::Between>(&e.node)) {
      auto lhs = Term(*b->operand);
      auto lo = Value(*b->low);
      auto hi = Value(*b->high);
      if (!lhs || !lo || !hi) return std::nullopt;
      return *lhs + (b->negated ? " is not between " : " is between ") + *lo + " and " + *hi;
    }
    if (const auto* in = std::get_if<sql::InList>(&e.node)) {
      auto lhs = Term(*in->lhs);
      if (!lhs) return std::nullopt;
      std::string list;
      for (const auto& item : in->items) {
        auto v = Value(item);
        if (!v) return std::nullopt;
        if (!list.empty()) list += ", ";
        list += *v;
      }
      return *lhs + (in->negated ? " is none of (" : " is one of (") + list + ")";
    }
    if (const auto* in = std::get_if<sql::InSubquery>(&e.node)) {
      auto lhs = Term(*in->lhs);
      auto step = StepStub(*in->query);
      if (!lhs || !step) return std::nullopt;
      return *lhs + (in->negated ? " is not among " : " is among ") + *step;
    }
    return std::nullopt;
  }

  std::string table_;
  std::string alias_;
  std::vector<std::string> item_phrases_;
};

struct ColumnCollector : sql::walk::Visitor {
  std::vector<std::string> names;
  void OnColumn(const sql::ColumnRef& c) {
    const std::string& n = c.parts.back().text;
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  }
};

std::vector<std::string> ColumnsOf(const Expr& e) {
  ColumnCollector v;
  sql::walk::Expr(e, v);
  return v.names;
}

// ---- parsing ----------------------------------------------------------------

class SentenceParser {
 public:
  explicit SentenceParser(std::string_view text) : s_(text) {}

  std::optional<std::string> Top() {
    auto sql = Sentence();
    if (!sql) return std::nullopt;
    Accept(".");
    SkipSpace();
    if (pos_ != s_.size()) return std::nullopt;
    return sql;
  }

 private:
  void SkipSpace() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool LookingAt(std::string_view word) const {
    if (s_.size() - pos_ < word.size()) return false;
    for (size_t i = 0; i < word.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(s_[pos_ + i])) !=
          std::tolower(static_cast<unsigned char>(word[i])))
        return false;
    }
    return true;
  }

  bool Accept(std::string_view word) {
    if (!LookingAt(word)) return false;
    pos_ += word.size();
    return true;
  }

  std::optional<std::string> Word() {
    size_t start = pos_;
    if (pos_ < s_.size() &&
        (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
    }
    if (pos_ == start) return std::nullopt;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::optional<std::string> Sentence() {
    SkipSpace();
    auto verb = Word();
    if (!verb) return std::nullopt;
    bool known = std::any_of(LeadVerbs().begin(), LeadVerbs().end(),
                             [&](std::string_view v) { return sql::EqualsIgnoreCase(v, *verb); });
    if (!known || !Accept(" ")) return std::nullopt;

    std::string out = "SELECT ";
    if (Accept("distinct ")) out += "DISTINCT ";
    if (Accept("all columns")) {
      out += "*";
    } else {
      auto items = TermList(/*aliases=*/true);
      if (!items) return std::nullopt;
      out += *items;
    }
    if (!Accept(" from ")) return std::nullopt;
    auto source = Source(/*scalar=*/false);
    if (!source) return std::nullopt;
    out += " FROM " + *source;
    if (Accept(" where ")) {
      auto c = Conditions();
      if (!c) return std::nullopt;
      out += " WHERE " + *c;
    }
    if (Accept(", grouped by ")) {
      auto keys = TermList();
      if (!keys) return std::nullopt;
      out += " GROUP BY " + *keys;
    }
    if (Accept(", keeping groups where ")) {
      auto c = Conditions();
      if (!c) return std::nullopt;
      out += " HAVING " + *c;
    }
    if (Accept(", sorted by ")) {
      std::string order;
      do {
        auto t = Term();
        if (!t) return std::nullopt;
        if (!order.empty()) order += ", ";
        order += *t;
        if (Accept(" in descending order")) {
          order += " DESC";
        } else if (Accept(" in ascending order")) {
          order += " ASC";
        }
      } while (Accept(" then by "));
      out += " ORDER BY " + order;
    }
    if (Accept(", keeping only the first ")) {
      auto n = Number();
      if (!n || !Accept(" rows")) return std::nullopt;
      out += " LIMIT " + *n;
      if (Accept(" after skipping ")) {
        auto m = Number();
        if (!m || !Accept(" rows")) return std::nullopt;
        out += " OFFSET " + *m;
      }
    }
    return out;
  }

  // "(<sentence>)" or a bare step or table name.
  std::optional<std::string> Source(bool scalar) {
    if (Accept("(")) {
      auto inner = Sentence();
      if (!inner || !Accept(")")) return std::nullopt;
      return "(" + *inner + ")";
    }
    auto w = Word();
    if (!w) return std::nullopt;
    return scalar ? "(SELECT * FROM " + *w + ")" : *w;
  }

  bool AtClauseKeyword() const {
    return LookingAt("grouped by") || LookingAt("keeping ") || LookingAt("sorted by");
  }

  std::optional<std::string> TermList(bool aliases = false) {
    std::string out;
    while (true) {
      auto t = Term();
      if (!t) return std::nullopt;
      if (!out.empty()) out += ", ";
      out += *t;
      if (aliases && Accept(" as ")) {
        auto alias = Word();
        if (!alias) return std::nullopt;
        out += " AS " + *alias;
      }
      size_t mark = pos_;
      if (Accept(", ") || Accept(" and ")) {
        if (!AtClauseKeyword()) continue;
      }
      pos_ = mark;
      return out;
    }
  }

  std::optional<std::string> Term() {
    if (Accept("the number of rows")) return std::string("COUNT(*)");
    if (Accept("the number of distinct ")) {
      auto w = Word();
      if (!w) return std::nullopt;
      return "COUNT(DISTINCT " + *w + ")";
    }
    for (const auto& a : kAggregates) {
      if (Accept(a.phrase)) {
        auto w = Word();
        if (!w) return std::nullopt;
        return std::string(a.function) + "(" + *w + ")";
      }
    }
    return Word();
  }

  std::optional<std::string> Number() {
    size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    size_t digits = pos_;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      bool digit_follows =
          pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]));
      if (!std::isdigit(static_cast<unsigned char>(c)) && !(c == '.' && digit_follows)) break;
      ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ > digits) {
      size_t e = pos_ + 1;
      if (e < s_.size() && (s_[e] == '+' || s_[e] == '-')) ++e;
      if (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) {
        pos_ = e;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    if (pos_ == digits || !std::isdigit(static_cast<unsigned char>(s_[digits]))) {
      pos_ = start;
      return std::nullopt;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  std::optional<std::string> Value() {
    if (Accept("the value of ")) return Source(/*scalar=*/true);
    if (pos_ < s_.size() && s_[pos_] == '\'') {
      size_t start = pos_++;
      while (pos_ < s_.size()) {
        if (s_[pos_] == '\'') {
          if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '\'') {
            pos_ += 2;
            continue;
          }
          ++pos_;
          return std::string(s_.substr(start, pos_ - start));
        }
        ++pos_;
      }
      return std::nullopt;
    }
    if (auto n = Number()) return n;
    for (std::string_view kw : {"NULL", "TRUE", "FALSE"}) {
      size_t end = pos_ + kw.size();
      if (LookingAt(kw) &&
          (end == s_.size() || !(std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))) {
        pos_ = end;
        return std::string(kw);
      }
    }
    return std::nullopt;
  }

  std::optional<std::string> Conditions() {
    std::string out;
    do {
      auto c = Condition();
      if (!c) return std::nullopt;
      if (!out.empty()) out += " AND ";
      out += *c;
    } while (Accept(" and "));
    return out;
  }

  std::optional<std::string> ValueList() {
    std::string out;
    do {
      auto v = Value();
      if (!v) return std::nullopt;
      if (!out.empty()) out += ", ";
      out += *v;
    } while (Accept(", "));
    if (!Accept(")")) return std::nullopt;
    return "(" + out + ")";
  }

  std::optional<std::string> Condition() {
    auto lhs = Term();
    if (!lhs) return std::nullopt;
    auto between = [&](bool negated) -> std::optional<std::string> {
      auto lo = Value();
      if (!lo || !Accept(" and ")) return std::nullopt;
      auto hi = Value();
      if (!hi) return std::nullopt;
      return *lhs + (negated ? " NOT BETWEEN " : " BETWEEN ") + *lo + " AND " + *hi;
    };
    if (Accept(" is not between ")) return between(true);
    if (Accept(" is between ")) return between(false);
    for (bool negated : {true, false}) {
      if (Accept(negated ? " is not among " : " is among ")) {
        auto sub = Source(/*scalar=*/false);
        if (!sub) return std::nullopt;
        if (sub->front() != '(') *sub = "(SELECT * FROM " + *sub + ")";
        return *lhs + (negated ? " NOT IN " : " IN ") + *sub;
      }
    }
    for (bool negated : {true, false}) {
      if (Accept(negated ? " is none of (" : " is one of (")) {
        auto list = ValueList();
        if (!list) return std::nullopt;
        return *lhs + (negated ? " NOT IN " : " IN ") + *list;
      }
    }
    if (Accept(" is missing")) return *lhs + " IS NULL";
    if (Accept(" is present")) return *lhs + " IS NOT NULL";
    for (bool negated : {true, false}) {
      if (Accept(negated ? " does not match " : " matches ")) {
        auto v = Value();
        if (!v) return std::nullopt;
        return *lhs + (negated ? " NOT LIKE " : " LIKE ") + *v;
      }
    }
    for (const auto& c : kComparisons) {
      if (c.op == "!=") continue;
      if (Accept(c.phrase)) {
        auto v = Value();
        if (!v) return std::nullopt;
        return *lhs + " " + std::string(c.op) + " " + *v;
      }
    }
    return std::nullopt;
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

const std::vector<std::string_view>& LeadVerbs() {
  static const std::vector<std::string_view> verbs = {
      "List", "Show", "Return", "Find", "Retrieve", "Get", "Display", "Give"};
  return verbs;
}

std::optional<std::string> DescribeExact(const sql::Query& query) {
  return ExactDescriber().Describe(query);
}

std::string DescribeLoosely(const sql::Query& query) {
  std::vector<std::string> tables = sql::ReferencedTables(query);
  const auto* core = std::get_if<sql::SelectCore>(&query.body.node);
  if (!core) {
    return "the combined rows of several queries over " + ListPhrase(tables);
  }
  std::vector<std::string> outputs;
  for (const auto& item : core->items) {
    std::string name;
    if (item.alias) {
      name = item.alias->text;
    } else if (const auto* col = std::get_if<sql::ColumnRef>(&item.expr.node)) {
      name = col->parts.back().text;
    } else if (std::holds_alternative<sql::Star>(item.expr.node)) {
      name = "all columns";
    } else {
      name = "a computed value";
    }
    // "the computed x" keeps loose text out of the exact grammar.
    if (item.alias && !std::holds_alternative<sql::ColumnRef>(item.expr.node))
      name = "the computed " + name;
    if (std::find(outputs.begin(), outputs.end(), name) == outputs.end())
      outputs.push_back(name);
  }
  std::string out = (core->distinct ? "distinct " : "") + ListPhrase(outputs);
  out += " from " + (tables.empty() ? std::string("a constant row") : ListPhrase(tables));
  if (core->where) {
    auto cols = ColumnsOf(*core->where);
    out += cols.empty() ? ", filtered" : ", filtered on " + ListPhrase(cols);
  }
  if (!core->group_by.empty()) {
    std::vector<std::string> keys;
    for (const auto& g : core->group_by) {
      for (auto& c : ColumnsOf(g)) keys.push_back(std::move(c));
    }
    out += keys.empty() ? ", grouped" : ", grouped by " + ListPhrase(keys);
  }
  if (!query.order_by.empty()) {
    std::vector<std::string> keys;
    for (const auto& o : query.order_by) {
      for (auto& c : ColumnsOf(o.expr)) keys.push_back(std::move(c));
    }
    out += keys.empty() ? ", sorted" : ", sorted by " + ListPhrase(keys);
  }
  return out;
}

std::optional<std::string_view> StripLeadVerb(std::string_view sentence) {
  for (std::string_view v : LeadVerbs()) {
    if (sentence.size() > v.size() && sentence[v.size()] == ' ' &&
        sql::EqualsIgnoreCase(sentence.substr(0, v.size()), v))
      return sentence.substr(v.size() + 1);
  }
  return std::nullopt;
}

std::optional<std::string> ParseSentence(std::string_view sentence) {
  static const std::regex variant_suffix(R"(\s*\(variant [0-9]+\)\s*$)");
  std::string text = std::regex_replace(std::string(sentence), variant_suffix, "");
  return SentenceParser(text).Top();
}

std::string GuessSql(std::string_view text, const std::vector<sql::TableDef>& tables) {
  if (tables.empty()) return "SELECT NULL";
  std::vector<std::string> words;
  std::string cur;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      words.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  auto mentioned = [&](const std::string& name) {
    return std::find(words.begin(), words.end(), sql::ToLower(name)) != words.end();
  };
  const sql::TableDef* table = &tables.front();
  for (const auto& w : words) {
    auto it = std::find_if(tables.begin(), tables.end(), [&](const sql::TableDef& t) {
      return sql::ToLower(t.name) == w;
    });
    if (it != tables.end()) {
      table = &*it;
      break;
    }
  }
  std::vector<std::string> cols;
  for (const auto& c : table->columns) {
    if (mentioned(c.name)) cols.push_back(c.name);
  }
  std::string out = "SELECT ";
  if (cols.empty()) {
    out += "*";
  } else {
    for (size_t i = 0; i < cols.size(); ++i) out += (i ? ", " : "") + cols[i];
  }
  return out + " FROM " + table->name;
}

}  // namespace benchforge::generation::phrasing
