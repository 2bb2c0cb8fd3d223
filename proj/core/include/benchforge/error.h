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

#ifndef BENCHFORGE_ERROR_H_
#define BENCHFORGE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace benchforge {

// Every domain failure surfaced by the library carries one of these codes.
// The string form (ErrorCodeName) is what the HTTP API and the CLI's --json
// output report in their {code, message} error objects.
enum class ErrorCode {
  kSyntaxError,
  kUnsupportedConstruct,
  kUnknownTable,
  kCorrelatedSubquery,
  kNotNested,
  kSchemaParseError,
  kDuplicateTable,
  kEmbedderUnavailable,
  kUnknownTemplate,
  kBackendError,
  kEmptyCompletion,
  kMissingSubDescription,
  kDuplicateName,
  kNotImplemented,
  kQueueEmpty,
  kLeaseMismatch,
  kInvalidTransition,
  kUnknownCandidate,
  kNothingAccepted,
  kNoAcceptedItems,
  kExecError,
  kNotFound,
  kInvalidArgument,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Lexer/parser failure. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column,
              std::string token)
      : Error(ErrorCode::kSyntaxError,
              message + " at line " + std::to_string(line) + ", column " +
                  std::to_string(column) +
                  (token.empty() ? "" : " near \"" + token + "\"")),
        line_(line),
        column_(column),
        token_(std::move(token)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  int line_;
  int column_;
  std::string token_;
};

class UnsupportedConstruct : public Error {
 public:
  explicit UnsupportedConstruct(std::string construct)
      : Error(ErrorCode::kUnsupportedConstruct,
              "unsupported construct: " + construct),
        construct_(std::move(construct)) {}

  const std::string& construct() const { return construct_; }

 private:
  std::string construct_;
};

class UnknownTableError : public Error {
 public:
  explicit UnknownTableError(std::vector<std::string> names)
      : Error(ErrorCode::kUnknownTable, "unknown table(s): " + Join(names)),
        names_(std::move(names)) {}

  const std::vector<std::string>& names() const { return names_; }

 private:
  static std::string Join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
      if (!out.empty()) out += ", ";
      out += n;
    }
    return out;
  }

  std::vector<std::string> names_;
};

class SchemaParseError : public Error {
 public:
  SchemaParseError(const std::string& message, int line, int column)
      : Error(ErrorCode::kSchemaParseError,
              message + " at line " + std::to_string(line) + ", column " +
                  std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Remote completion/embedding transport failure after all retries.
class BackendError : public Error {
 public:
  BackendError(const std::string& message, int attempts)
      : Error(ErrorCode::kBackendError,
              message + " (after " + std::to_string(attempts) + " attempt" +
                  (attempts == 1 ? "" : "s") + ")"),
        attempts_(attempts) {}

  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

}  // namespace benchforge

#endif  // BENCHFORGE_ERROR_H_
