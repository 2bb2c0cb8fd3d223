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

#include "benchforge/generation/candidate.h"

#include "benchforge/error.h"

namespace benchforge::generation {

std::string_view CandidateOriginName(CandidateOrigin origin) {
  switch (origin) {
    case CandidateOrigin::kGenerated: return "generated";
    case CandidateOrigin::kMerged: return "merged";
    case CandidateOrigin::kAnnotatorEdited: return "annotator_edited";
  }
  return "generated";
}

CandidateOrigin CandidateOriginFromName(std::string_view name) {
  if (name == "generated") return CandidateOrigin::kGenerated;
  if (name == "merged") return CandidateOrigin::kMerged;
  if (name == "annotator_edited") return CandidateOrigin::kAnnotatorEdited;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown candidate origin \"" + std::string(name) + "\"");
}

std::string_view CandidateStatusName(CandidateStatus status) {
  switch (status) {
    case CandidateStatus::kProposed: return "proposed";
    case CandidateStatus::kEdited: return "edited";
    case CandidateStatus::kAccepted: return "accepted";
    case CandidateStatus::kDiscarded: return "discarded";
  }
  return "proposed";
}

CandidateStatus CandidateStatusFromName(std::string_view name) {
  if (name == "proposed") return CandidateStatus::kProposed;
  if (name == "edited") return CandidateStatus::kEdited;
  if (name == "accepted") return CandidateStatus::kAccepted;
  if (name == "discarded") return CandidateStatus::kDiscarded;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown candidate status \"" + std::string(name) + "\"");
}

nlohmann::json ToJson(const Candidate& c) {
  nlohmann::json j = {{"candidate_id", c.candidate_id},
                      {"text", c.text},
                      {"origin", std::string(CandidateOriginName(c.origin))},
                      {"model_id", c.model_id},
                      {"prompt_hash", c.prompt_hash},
                      {"status", std::string(CandidateStatusName(c.status))},
                      {"created_at", c.created_at}};
  j["rank"] = c.rank ? nlohmann::json(*c.rank) : nlohmann::json(nullptr);
  return j;
}

Candidate CandidateFromJson(const nlohmann::json& j) {
  Candidate c;
  c.candidate_id = j.at("candidate_id").get<std::string>();
  c.text = j.at("text").get<std::string>();
  c.origin = CandidateOriginFromName(j.at("origin").get<std::string>());
  c.model_id = j.value("model_id", "");
  c.prompt_hash = j.value("prompt_hash", "");
  c.status = CandidateStatusFromName(j.at("status").get<std::string>());
  c.created_at = j.value("created_at", "");
  if (j.contains("rank") && !j["rank"].is_null()) c.rank = j["rank"].get<int>();
  return c;
}

}  // namespace benchforge::generation
