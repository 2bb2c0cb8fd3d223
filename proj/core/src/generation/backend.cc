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

#include "benchforge/generation/backend.h"

#include <cstdlib>
#include <thread>

#include "benchforge/error.h"

namespace benchforge::generation {

void GenerationParams::Validate() const {
  if (n_candidates < 1)
    throw Error(ErrorCode::kInvalidArgument, "n_candidates must be at least 1");
  if (!(temperature >= 0.0))
    throw Error(ErrorCode::kInvalidArgument, "temperature must be non-negative");
  if (max_tokens < 1)
    throw Error(ErrorCode::kInvalidArgument, "max_tokens must be positive");
}

nlohmann::json ToJson(const GenerationParams& params) {
  nlohmann::json j = {{"model_name", params.model_name},
                      {"temperature", params.temperature},
                      {"n_candidates", params.n_candidates},
                      {"max_tokens", params.max_tokens}};
  j["seed"] = params.seed ? nlohmann::json(*params.seed) : nlohmann::json(nullptr);
  return j;
}

GenerationParams GenerationParamsFromJson(const nlohmann::json& j) {
  GenerationParams p;
  try {
    p.model_name = j.value("model_name", p.model_name);
    p.temperature = j.value("temperature", p.temperature);
    p.n_candidates = j.value("n_candidates", p.n_candidates);
    p.max_tokens = j.value("max_tokens", p.max_tokens);
    if (j.contains("seed") && !j["seed"].is_null()) p.seed = j["seed"].get<uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("bad generation parameters: ") + e.what());
  }
  p.Validate();
  return p;
}

std::optional<RemoteBackendConfig> RemoteBackendConfigFromEnv() {
  const char* url = std::getenv("BENCHFORGE_LLM_URL");
  if (!url || !*url) return std::nullopt;
  RemoteBackendConfig config;
  config.base_url = url;
  if (const char* key = std::getenv("BENCHFORGE_LLM_KEY")) config.api_key = key;
  if (const char* model = std::getenv("BENCHFORGE_LLM_MODEL")) config.model = model;
  return config;
}

RemoteBackend::RemoteBackend(RemoteBackendConfig config,
                             std::shared_ptr<net::HttpTransport> transport, Sleeper sleeper)
    : config_(std::move(config)),
      transport_(transport ? std::move(transport) : net::MakeHttpTransport()),
      sleeper_(sleeper ? std::move(sleeper)
                       : [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {
  while (!config_.base_url.empty() && config_.base_url.back() == '/')
    config_.base_url.pop_back();
  if (config_.max_attempts < 1) config_.max_attempts = 1;
}

std::string RemoteBackend::model_id(const GenerationParams& params) const {
  return params.model_name.empty() ? config_.model : params.model_name;
}

std::vector<std::string> RemoteBackend::Complete(const std::string& prompt, int n,
                                                 const GenerationParams& params) {
  std::vector<std::string> texts;
  // Some servers ignore "n"; ask again for the remainder while progress is made.
  for (int round = 0; round < n && static_cast<int>(texts.size()) < n; ++round) {
    nlohmann::json body = {
        {"model", model_id(params)},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
        {"n", n - static_cast<int>(texts.size())},
        {"temperature", params.temperature},
        {"max_tokens", params.max_tokens}};
    if (params.seed) body["seed"] = *params.seed;

    net::HttpRequest req;
    req.url = config_.base_url + "/v1/chat/completions";
    req.body = body.dump();
    req.timeout_seconds = config_.timeout_seconds;
    req.headers.emplace_back("Content-Type", "application/json");
    if (!config_.api_key.empty())
      req.headers.emplace_back("Authorization", "Bearer " + config_.api_key);

    std::string last_error;
    std::optional<net::HttpResponse> ok;
    int attempt = 1;
    for (;; ++attempt) {
      net::HttpResponse resp = transport_->Post(req);
      if (resp.status >= 200 && resp.status < 300) {
        ok = std::move(resp);
        break;
      }
      bool retryable = resp.status == 0 || resp.status == 429 || resp.status >= 500;
      last_error = resp.status == 0 ? "transport error: " + resp.error
                                    : "HTTP " + std::to_string(resp.status);
      if (!retryable) throw BackendError(last_error, attempt);
      if (attempt == config_.max_attempts) throw BackendError(last_error, attempt);
      sleeper_(std::chrono::milliseconds(1000 << (attempt - 1)));
    }

    size_t before = texts.size();
    try {
      nlohmann::json reply = nlohmann::json::parse(ok->body);
      for (const auto& choice : reply.at("choices")) {
        const auto& content = choice.at("message").at("content");
        texts.push_back(content.is_null() ? "" : content.get<std::string>());
        if (static_cast<int>(texts.size()) == n) break;
      }
    } catch (const nlohmann::json::exception& e) {
      throw BackendError(std::string("malformed completion response: ") + e.what(), attempt);
    }
    if (texts.size() == before) break;
  }
  return texts;
}

std::unique_ptr<CompletionBackend> MakeBackend(const std::string& name) {
  if (name == "mock") return std::make_unique<MockBackend>();
  if (name == "remote") {
    auto config = RemoteBackendConfigFromEnv();
    if (!config)
      throw Error(ErrorCode::kInvalidArgument, "remote backend needs BENCHFORGE_LLM_URL");
    return std::make_unique<RemoteBackend>(std::move(*config));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown backend \"" + name + "\"");
}

}  // namespace benchforge::generation
