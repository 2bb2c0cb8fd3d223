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

#ifndef BENCHFORGE_GENERATION_CANDIDATE_H_
#define BENCHFORGE_GENERATION_CANDIDATE_H_

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace benchforge::generation {

enum class CandidateOrigin { kGenerated, kMerged, kAnnotatorEdited };
enum class CandidateStatus { kProposed, kEdited, kAccepted, kDiscarded };

std::string_view CandidateOriginName(CandidateOrigin origin);
CandidateOrigin CandidateOriginFromName(std::string_view name);
std::string_view CandidateStatusName(CandidateStatus status);
CandidateStatus CandidateStatusFromName(std::string_view name);

struct Candidate {
  std::string candidate_id;
  std::string text;
  CandidateOrigin origin = CandidateOrigin::kGenerated;
  std::string model_id;
  std::string prompt_hash;  // empty for annotator edits
  std::optional<int> rank;
  CandidateStatus status = CandidateStatus::kProposed;
  std::string created_at;

  bool operator==(const Candidate&) const = default;
};

nlohmann::json ToJson(const Candidate& c);
Candidate CandidateFromJson(const nlohmann::json& j);

}  // namespace benchforge::generation

#endif  // BENCHFORGE_GENERATION_CANDIDATE_H_
