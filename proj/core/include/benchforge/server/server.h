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

#ifndef BENCHFORGE_SERVER_SERVER_H_
#define BENCHFORGE_SERVER_SERVER_H_

#include <memory>
#include <string>

#include "benchforge/error.h"
#include "benchforge/workflow/workspace.h"

namespace benchforge::server {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::string token;  // required; BENCHFORGE_TOKEN
  std::string cors_origin = "*";
  // Fixture database used by /evaluate when the request names none.
  std::string default_db_dir;
  int threads = 8;
};

// HTTP status for a domain error code.
int HttpStatusFor(ErrorCode code);

// JSON API over one workspace. Item keys in URLs are "<project>:<target>",
// where target is an item id or a sub-item id.
class ApiServer {
 public:
  // Throws Error(kInvalidArgument) when the token is empty.
  ApiServer(ServerConfig config, std::shared_ptr<workflow::Workspace> workspace);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Binds the socket and returns the port. Throws Error(kIoError) when the
  // address is in use.
  int Bind();
  // Serves until Stop(). Binds first if needed.
  void Run();
  // Bind + Run on a background thread.
  void Start();
  void Stop();
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace benchforge::server

#endif  // BENCHFORGE_SERVER_SERVER_H_
