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

#ifndef BENCHFORGE_GENERATION_BACKEND_H_
#define BENCHFORGE_GENERATION_BACKEND_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "benchforge/net/http.h"

namespace benchforge::generation {

struct GenerationParams {
  std::string model_name;  // empty: backend default
  double temperature = 0.7;
  int n_candidates = 4;
  std::optional<uint64_t> seed;  // honored by the mock backend
  int max_tokens = 256;

  // Throws Error(kInvalidArgument).
  void Validate() const;

  bool operator==(const GenerationParams&) const = default;
};

nlohmann::json ToJson(const GenerationParams& params);
// Missing keys keep their defaults.
GenerationParams GenerationParamsFromJson(const nlohmann::json& j);

// Completion contract: up to n texts for one prompt, in backend order.
class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  virtual std::vector<std::string> Complete(const std::string& prompt, int n,
                                            const GenerationParams& params) = 0;
  virtual std::string model_id(const GenerationParams& params) const = 0;
};

// Deterministic offline backend. Reads the prompt's sections back: describes
// the fenced SQL, inlines part descriptions for merges and maps questions to
// SQL for backtranslation. Output depends only on (prompt, n, seed).
class MockBackend : public CompletionBackend {
 public:
  std::vector<std::string> Complete(const std::string& prompt, int n,
                                    const GenerationParams& params) override;
  std::string model_id(const GenerationParams& params) const override;
};

struct RemoteBackendConfig {
  std::string base_url;  // POST <base_url>/v1/chat/completions
  std::string api_key;
  std::string model;
  int timeout_seconds = 60;
  int max_attempts = 3;
};

// Reads BENCHFORGE_LLM_URL, BENCHFORGE_LLM_KEY and BENCHFORGE_LLM_MODEL.
// nullopt when the URL is unset.
std::optional<RemoteBackendConfig> RemoteBackendConfigFromEnv();

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Chat-completions client. Transport failures, 429 and 5xx are retried with
// 1s then 2s pauses; other statuses fail at once. Throws BackendError.
class RemoteBackend : public CompletionBackend {
 public:
  explicit RemoteBackend(RemoteBackendConfig config,
                         std::shared_ptr<net::HttpTransport> transport = nullptr,
                         Sleeper sleeper = nullptr);

  std::vector<std::string> Complete(const std::string& prompt, int n,
                                    const GenerationParams& params) override;
  std::string model_id(const GenerationParams& params) const override;

 private:
  RemoteBackendConfig config_;
  std::shared_ptr<net::HttpTransport> transport_;
  Sleeper sleeper_;
};

// "mock", or "remote" configured from the environment. Throws
// Error(kInvalidArgument) for unknown names or a missing URL.
std::unique_ptr<CompletionBackend> MakeBackend(const std::string& name);

}  // namespace benchforge::generation

#endif  // BENCHFORGE_GENERATION_BACKEND_H_
