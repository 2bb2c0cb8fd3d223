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

#include "benchforge/evaluation/report.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "benchforge/error.h"
#include "benchforge/evaluation/backtranslate.h"
#include "benchforge/evaluation/metrics.h"

namespace benchforge::evaluation {
namespace {

nlohmann::json OptionalNumber(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> NumberOrNull(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

EvalItemResult EvaluateOne(const EvalInput& in, const sql::SchemaCatalog& catalog,
                           const Database& db, generation::CompletionBackend& backend,
                           const generation::GenerationParams& params) {
  EvalItemResult r;
  r.item_id = in.item_id;
  r.nl = in.nl;
  r.original_sql = in.original_sql;
  r.regenerated_sql = Backtranslate(in.nl, catalog, backend, params);
  r.automatic_judgment = ClassifyRubric(in.original_sql, r.regenerated_sql, db, catalog);
  r.judgment = in.override_judgment ? *in.override_judgment : r.automatic_judgment;
  r.exec_match = ExecAccuracyMatch(r.regenerated_sql, in.original_sql, db);
  r.exact_match = ExactMatch(r.regenerated_sql, in.original_sql);
  if (in.reference_question && !in.reference_question->empty()) {
    r.bleu = Bleu(in.nl, {*in.reference_question});
    r.rouge_l = RougeL(in.nl, *in.reference_question);
  }
  return r;
}

}  // namespace

void Summarize(EvalReport& report) {
  report.level_histogram = {};
  int matches = 0, scored = 0;
  double bleu = 0.0, rouge = 0.0;
  for (const auto& item : report.items) {
    if (item.judgment.level >= 1 && item.judgment.level <= 5)
      ++report.level_histogram[item.judgment.level - 1];
    matches += item.exec_match;
    if (item.bleu && item.rouge_l) {
      ++scored;
      bleu += *item.bleu;
      rouge += *item.rouge_l;
    }
  }
  report.execution_accuracy =
      report.items.empty() ? 0.0 : static_cast<double>(matches) / report.items.size();
  report.mean_bleu = scored ? std::optional<double>(bleu / scored) : std::nullopt;
  report.mean_rouge_l = scored ? std::optional<double>(rouge / scored) : std::nullopt;
}

EvalReport EvaluateItems(const std::vector<EvalInput>& inputs,
                         const sql::SchemaCatalog& catalog, const Database& db,
                         generation::CompletionBackend& backend,
                         const generation::GenerationParams& params, unsigned max_threads) {
  if (inputs.empty()) throw Error(ErrorCode::kNoAcceptedItems, "no accepted items to evaluate");
  generation::GenerationParams single = params;
  single.n_candidates = 1;

  EvalReport report;
  report.items.resize(inputs.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (size_t i = next++; i < inputs.size(); i = next++) {
      try {
        report.items[i] = EvaluateOne(inputs[i], catalog, db, backend, single);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = inputs.size();
      }
    }
  };
  unsigned threads = std::max(1u, std::min<unsigned>(max_threads, inputs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  Summarize(report);
  return report;
}

nlohmann::json ToJson(const EvalReport& report) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& r : report.items) {
    items.push_back({{"item_id", r.item_id},
                     {"nl", r.nl},
                     {"original_sql", r.original_sql},
                     {"regenerated_sql", r.regenerated_sql},
                     {"judgment", ToJson(r.judgment)},
                     {"automatic_judgment", ToJson(r.automatic_judgment)},
                     {"exec_match", r.exec_match},
                     {"exact_match", r.exact_match},
                     {"bleu", OptionalNumber(r.bleu)},
                     {"rouge_l", OptionalNumber(r.rouge_l)}});
  }
  nlohmann::json histogram = nlohmann::json::object();
  for (int level = 1; level <= 5; ++level)
    histogram[std::to_string(level)] = report.level_histogram[level - 1];
  return {{"items", items},
          {"aggregates",
           {{"item_count", report.items.size()},
            {"level_histogram", histogram},
            {"execution_accuracy", report.execution_accuracy},
            {"mean_bleu", OptionalNumber(report.mean_bleu)},
            {"mean_rouge_l", OptionalNumber(report.mean_rouge_l)}}}};
}

EvalReport EvalReportFromJson(const nlohmann::json& j) {
  EvalReport report;
  try {
    for (const auto& it : j.at("items")) {
      EvalItemResult r;
      r.item_id = it.at("item_id").get<std::string>();
      r.nl = it.at("nl").get<std::string>();
      r.original_sql = it.at("original_sql").get<std::string>();
      r.regenerated_sql = it.at("regenerated_sql").get<std::string>();
      r.judgment = RubricJudgmentFromJson(it.at("judgment"));
      r.automatic_judgment = RubricJudgmentFromJson(it.at("automatic_judgment"));
      r.exec_match = it.at("exec_match").get<bool>();
      r.exact_match = it.at("exact_match").get<bool>();
      r.bleu = NumberOrNull(it, "bleu");
      r.rouge_l = NumberOrNull(it, "rouge_l");
      report.items.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad eval report: ") + e.what());
  }
  Summarize(report);
  return report;
}

std::string HistogramText(const EvalReport& report) {
  static constexpr const char* kNames[] = {"Invalid", "Structurally incorrect",
                                           "Column-level errors", "Minor issues",
                                           "Fully correct"};
  size_t n = report.items.size();
  std::string out = "Backtranslation fidelity (" + std::to_string(n) + " items)\n";
  char line[160];
  for (int level = 5; level >= 1; --level) {
    int count = report.level_histogram[level - 1];
    double share = n ? 100.0 * count / n : 0.0;
    std::snprintf(line, sizeof(line), "  level %d %-23s %5d  %5.1f%%  ", level, kNames[level - 1],
                  count, share);
    out += line;
    out += std::string(static_cast<size_t>(share / 2.5 + 0.5), '#') + "\n";
  }
  std::snprintf(line, sizeof(line), "execution accuracy %.4f\n", report.execution_accuracy);
  out += line;
  if (report.mean_bleu) {
    std::snprintf(line, sizeof(line), "mean BLEU %.4f  mean ROUGE-L %.4f\n", *report.mean_bleu,
                  *report.mean_rouge_l);
    out += line;
  }
  return out;
}

}  // namespace benchforge::evaluation
