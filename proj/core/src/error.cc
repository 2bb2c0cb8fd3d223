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
#include "benchforge/error.h"

namespace benchforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorCode::kUnknownTable: return "UnknownTable";
    case ErrorCode::kCorrelatedSubquery: return "CorrelatedSubquery";
    case ErrorCode::kNotNested: return "NotNested";
    case ErrorCode::kSchemaParseError: return "SchemaParseError";
    case ErrorCode::kDuplicateTable: return "DuplicateTable";
    case ErrorCode::kEmbedderUnavailable: return "EmbedderUnavailable";
    case ErrorCode::kUnknownTemplate: return "UnknownTemplate";
    case ErrorCode::kBackendError: return "BackendError";
    case ErrorCode::kEmptyCompletion: return "EmptyCompletion";
    case ErrorCode::kMissingSubDescription: return "MissingSubDescription";
    case ErrorCode::kDuplicateName: return "DuplicateName";
    case ErrorCode::kNotImplemented: return "NotImplemented";
    case ErrorCode::kQueueEmpty: return "QueueEmpty";
    case ErrorCode::kLeaseMismatch: return "LeaseMismatch";
    case ErrorCode::kInvalidTransition: return "InvalidTransition";
    case ErrorCode::kUnknownCandidate: return "UnknownCandidate";
    case ErrorCode::kNothingAccepted: return "NothingAccepted";
    case ErrorCode::kNoAcceptedItems: return "NoAcceptedItems";
    case ErrorCode::kExecError: return "ExecError";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace benchforge
