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

#ifndef BENCHFORGE_SQL_LEXER_H_
#define BENCHFORGE_SQL_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

namespace benchforge::sql {

enum class TokenKind {
  kWord,              // bare identifier or keyword
  kQuotedIdentifier,  // "x", `x`, [x]
  kString,            // 'x'
  kNumber,
  kParameter,         // ?, ?1, :name, $1, @name
  kOperator,
  kPunct,             // ( ) , . ;
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  // Raw source text. For quoted identifiers this is the unquoted body.
  std::string text;
  char quote = 0;
  int line = 1;
  int column = 1;
  // Byte offset of the token start in the input.
  size_t offset = 0;

  bool IsPunct(char c) const {
    return kind == TokenKind::kPunct && text.size() == 1 && text[0] == c;
  }
  bool IsOperator(std::string_view op) const {
    return kind == TokenKind::kOperator && text == op;
  }
};

// Splits SQL text into tokens, dropping whitespace and comments. The result
// always ends with a kEnd token. Throws SyntaxError on unterminated strings,
// quoted identifiers or block comments, and on stray characters.
std::vector<Token> Tokenize(std::string_view text);

// ASCII case folding helpers shared across the SQL code.
std::string ToUpper(std::string_view s);
std::string ToLower(std::string_view s);
bool EqualsIgnoreCase(std::string_view a, std::string_view b);

// True when |upper| (already uppercased) is a reserved word of the supported
// grammar. Reserved words are rendered uppercase and cannot be bare aliases.
bool IsReservedKeyword(std::string_view upper);

// Splits a script into statements on top-level semicolons, respecting
// quotes and comments. Empty statements are dropped; each statement is
// returned trimmed, without its terminating semicolon.
std::vector<std::string> SplitStatements(std::string_view script);

}  // namespace benchforge::sql

#endif  // BENCHFORGE_SQL_LEXER_H_
