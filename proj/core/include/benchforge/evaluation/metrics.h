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
#ifndef BENCHFORGE_EVALUATION_METRICS_H_
#define BENCHFORGE_EVALUATION_METRICS_H_

#include <string>
#include <string_view>
#include <vector>

#include "benchforge/evaluation/database.h"

namespace benchforge::evaluation {

struct ResultComparison {
  // Same arity and equal row multisets under some column permutation.
  bool multiset_equal = false;
  // Equal row sequences under a permutation that also matches multisets.
  bool sequence_equal = false;
};

// Column names are ignored. Integral REALs compare equal to INTEGERs and
// REALs are compared after rounding to 10 significant digits.
ResultComparison CompareResults(const ResultTable& pred, const ResultTable& gold);

// True iff both queries execute and the results match: as multisets, or as
// sequences when the gold query has a top-level ORDER BY.
bool ExecAccuracyMatch(std::string_view pred_sql, std::string_view gold_sql,
                       const Database& db);

// Equality of canonical renderings. Unparsable input falls back to
// whitespace-normalized string equality.
bool ExactMatch(std::string_view a, std::string_view b);

// Lowercased alphanumeric runs; the tokenization shared by Bleu and RougeL.
std::vector<std::string> MetricTokens(std::string_view text);

// Sentence BLEU-4 with uniform weights. Unigram precision is unsmoothed,
// n = 2..4 use add-one smoothing ((m + 1) / (c + 1)). Clipping takes the
// maximum count over references; the brevity penalty uses the reference
// length closest to the candidate's (shorter on ties). Empty candidate or
// no references: 0.
double Bleu(std::string_view candidate, const std::vector<std::string>& references);

// F1 of the longest common token subsequence.
double RougeL(std::string_view candidate, std::string_view reference);

}  // namespace benchforge::evaluation

#endif  // BENCHFORGE_EVALUATION_METRICS_H_
