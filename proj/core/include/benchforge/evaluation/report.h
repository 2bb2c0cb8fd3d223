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

#ifndef BENCHFORGE_EVALUATION_REPORT_H_
#define BENCHFORGE_EVALUATION_REPORT_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "benchforge/evaluation/database.h"
#include "benchforge/evaluation/rubric.h"
#include "benchforge/generation/backend.h"
#include "benchforge/sql/schema.h"

namespace benchforge::evaluation {

struct EvalInput {
  std::string item_id;
  std::string original_sql;
  std::string nl;  // accepted description
  std::optional<std::string> reference_question;
  std::optional<RubricJudgment> override_judgment;
};

struct EvalItemResult {
  std::string item_id;
  std::string nl;
  std::string original_sql;
  std::string regenerated_sql;
  RubricJudgment judgment;            // override when present
  RubricJudgment automatic_judgment;  // what the classifier said
  bool exec_match = false;
  bool exact_match = false;
  // Against the reference question; absent without one.
  std::optional<double> bleu;
  std::optional<double> rouge_l;

  bool operator==(const EvalItemResult&) const = default;
};

struct EvalReport {
  std::vector<EvalItemResult> items;
  std::array<int, 5> level_histogram{};  // index 0 is level 1
  double execution_accuracy = 0.0;
  std::optional<double> mean_bleu;
  std::optional<double> mean_rouge_l;

  bool operator==(const EvalReport&) const = default;
};

// Backtranslates each description, grades the regenerated SQL and scores the
// description against its reference question. Items run on up to
// |max_threads| threads; results keep input order. Throws
// Error(kNoAcceptedItems) for an empty input and BackendError from the
// backend.
EvalReport EvaluateItems(const std::vector<EvalInput>& inputs,
                         const sql::SchemaCatalog& catalog, const Database& db,
                         generation::CompletionBackend& backend,
                         const generation::GenerationParams& params = {},
                         unsigned max_threads = 4);

// Recomputes the histogram and aggregates from items.
void Summarize(EvalReport& report);

nlohmann::json ToJson(const EvalReport& report);
EvalReport EvalReportFromJson(const nlohmann::json& j);

// Plain-text level histogram with counts and proportions.
std::string HistogramText(const EvalReport& report);

}  // namespace benchforge::evaluation

#endif  // BENCHFORGE_EVALUATION_REPORT_H_
