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

#include "benchforge/sql/lexer.h"

#include <algorithm>
#include <array>
#include <cctype>

#include "benchforge/error.h"

namespace benchforge::sql {
namespace {

// Sorted; looked up with binary search.
constexpr std::array<std::string_view, 60> kReserved = {
    "ALL", "AND", "AS", "ASC", "BETWEEN", "BY", "CASE",
    "CAST", "COLLATE", "CREATE", "CROSS", "DELETE", "DESC", "DISTINCT",
    "DROP", "ELSE", "END", "ESCAPE", "EXCEPT", "EXISTS", "FALSE",
    "FETCH", "FROM", "FULL", "GLOB", "GROUP", "HAVING", "ILIKE",
    "IN", "INNER", "INSERT", "INTERSECT", "IS", "ISNULL", "JOIN",
    "LEFT", "LIKE", "LIMIT", "MINUS", "NATURAL", "NOT", "NOTNULL",
    "NULL", "OFFSET", "ON", "OR", "ORDER", "OUTER", "OVER",
    "RECURSIVE", "REGEXP", "RIGHT", "SELECT", "THEN", "TRUE", "UNION",
    "UPDATE", "USING", "WHEN", "WHERE",
};

// Words that cannot appear as bare aliases even though they are not in the
// sorted list above (kept separate so the list stays easy to audit).
constexpr std::array<std::string_view, 3> kReservedExtra = {"WITH", "WINDOW",
                                                            "VALUES"};

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool IsIdentChar(char c) {
  return IsIdentStart(c) || std::isdigit(static_cast<unsigned char>(c)) ||
         c == '$';
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    while (true) {
      SkipTrivia();
      if (pos_ >= text_.size()) break;
      out.push_back(Next());
    }
    Token end;
    end.kind = TokenKind::kEnd;
    end.line = line_;
    end.column = column_;
    end.offset = text_.size();
    out.push_back(end);
    return out;
  }

 private:
  char Peek(size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void SkipTrivia() {
    while (pos_ < text_.size()) {
      char c = Peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else if (c == '-' && Peek(1) == '-') {
        while (pos_ < text_.size() && Peek() != '\n') Advance();
      } else if (c == '/' && Peek(1) == '*') {
        int line = line_, column = column_;
        Advance();
        Advance();
        while (pos_ < text_.size() && !(Peek() == '*' && Peek(1) == '/'))
          Advance();
        if (pos_ >= text_.size())
          throw SyntaxError("unterminated block comment", line, column, "/*");
        Advance();
        Advance();
      } else {
        break;
      }
    }
  }

  Token Start(TokenKind kind) {
    Token t;
    t.kind = kind;
    t.line = line_;
    t.column = column_;
    t.offset = pos_;
    return t;
  }

  Token Next() {
    char c = Peek();
    if (IsIdentStart(c)) {
      Token t = Start(TokenKind::kWord);
      while (pos_ < text_.size() && IsIdentChar(Peek())) Advance();
      t.text = std::string(text_.substr(t.offset, pos_ - t.offset));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(Peek(1))))) {
      return Number();
    }
    if (c == '\'') return Quoted(TokenKind::kString, '\'', '\'');
    if (c == '"') return Quoted(TokenKind::kQuotedIdentifier, '"', '"');
    if (c == '`') return Quoted(TokenKind::kQuotedIdentifier, '`', '`');
    if (c == '[') return Quoted(TokenKind::kQuotedIdentifier, '[', ']');
    if (c == '?' || ((c == ':' || c == '$' || c == '@') &&
                     (IsIdentChar(Peek(1))))) {
      Token t = Start(TokenKind::kParameter);
      Advance();
      while (pos_ < text_.size() && IsIdentChar(Peek())) Advance();
      t.text = std::string(text_.substr(t.offset, pos_ - t.offset));
      return t;
    }
    if (c == '(' || c == ')' || c == ',' || c == '.' || c == ';') {
      Token t = Start(TokenKind::kPunct);
      Advance();
      t.text = std::string(1, c);
      return t;
    }
    static constexpr std::array<std::string_view, 10> kTwoChar = {
        "<=", ">=", "<>", "!=", "==", "||", "<<", ">>", "::", "=>"};
    Token t = Start(TokenKind::kOperator);
    for (auto op : kTwoChar) {
      if (text_.substr(pos_, 2) == op) {
        Advance();
        Advance();
        t.text = std::string(op);
        return t;
      }
    }
    if (std::string_view("=<>+-*/%&|~").find(c) != std::string_view::npos) {
      Advance();
      t.text = std::string(1, c);
      return t;
    }
    throw SyntaxError("unexpected character", line_, column_,
                      std::string(1, c));
  }

  Token Number() {
    Token t = Start(TokenKind::kNumber);
    if (Peek() == '0' && (Peek(1) == 'x' || Peek(1) == 'X')) {
      Advance();
      Advance();
      while (std::isxdigit(static_cast<unsigned char>(Peek()))) Advance();
    } else {
      while (std::isdigit(static_cast<unsigned char>(Peek()))) Advance();
      if (Peek() == '.') {
        Advance();
        while (std::isdigit(static_cast<unsigned char>(Peek()))) Advance();
      }
      if ((Peek() == 'e' || Peek() == 'E') &&
          (std::isdigit(static_cast<unsigned char>(Peek(1))) ||
           ((Peek(1) == '+' || Peek(1) == '-') &&
            std::isdigit(static_cast<unsigned char>(Peek(2)))))) {
        Advance();
        if (Peek() == '+' || Peek() == '-') Advance();
        while (std::isdigit(static_cast<unsigned char>(Peek()))) Advance();
      }
    }
    if (IsIdentStart(Peek())) {
      throw SyntaxError("malformed number", t.line, t.column,
                        std::string(text_.substr(t.offset, pos_ + 1 - t.offset)));
    }
    t.text = std::string(text_.substr(t.offset, pos_ - t.offset));
    return t;
  }

  // Strings keep their quotes and doubled-quote escapes verbatim; quoted
  // identifiers store only the body.
  Token Quoted(TokenKind kind, char open, char close) {
    Token t = Start(kind);
    Advance();
    std::string body;
    while (true) {
      if (pos_ >= text_.size()) {
        throw SyntaxError(kind == TokenKind::kString
                              ? "unterminated string literal"
                              : "unterminated quoted identifier",
                          t.line, t.column, std::string(1, open));
      }
      char c = Peek();
      if (c == close) {
        if (close != ']' && Peek(1) == close) {
          body += c;
          body += c;
          Advance();
          Advance();
          continue;
        }
        Advance();
        break;
      }
      body += c;
      Advance();
    }
    if (kind == TokenKind::kString) {
      t.text = std::string(text_.substr(t.offset, pos_ - t.offset));
    } else {
      t.text = std::move(body);
      t.quote = open;
    }
    return t;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<Token> Tokenize(std::string_view text) {
  return Scanner(text).Run();
}

std::string ToUpper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

bool IsReservedKeyword(std::string_view upper) {
  return std::binary_search(kReserved.begin(), kReserved.end(), upper) ||
         std::find(kReservedExtra.begin(), kReservedExtra.end(), upper) !=
             kReservedExtra.end();
}

std::vector<std::string> SplitStatements(std::string_view script) {
  std::vector<std::string> out;
  std::string current;
  bool has_content = false;
  auto flush = [&] {
    if (has_content) {
      size_t b = current.find_first_not_of(" \t\r\n");
      size_t e = current.find_last_not_of(" \t\r\n");
      out.push_back(current.substr(b, e - b + 1));
    }
    current.clear();
    has_content = false;
  };
  size_t i = 0;
  while (i < script.size()) {
    char c = script[i];
    if (c == '-' && i + 1 < script.size() && script[i + 1] == '-') {
      size_t e = script.find('\n', i);
      if (e == std::string_view::npos) e = script.size();
      current.append(script.substr(i, e - i));
      i = e;
      continue;
    }
    if (c == '/' && i + 1 < script.size() && script[i + 1] == '*') {
      size_t e = script.find("*/", i + 2);
      e = (e == std::string_view::npos) ? script.size() : e + 2;
      current.append(script.substr(i, e - i));
      i = e;
      continue;
    }
    if (c == '\'' || c == '"' || c == '`') {
      size_t j = i + 1;
      while (j < script.size()) {
        if (script[j] == c) {
          if (j + 1 < script.size() && script[j + 1] == c) {
            j += 2;
            continue;
          }
          break;
        }
        ++j;
      }
      j = std::min(j + 1, script.size());
      current.append(script.substr(i, j - i));
      has_content = true;
      i = j;
      continue;
    }
    if (c == ';') {
      flush();
      ++i;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) has_content = true;
    current += c;
    ++i;
  }
  flush();
  return out;
}

}  // namespace benchforge::sql
