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
#ifndef BENCHFORGE_NET_HTTP_H_
#define BENCHFORGE_NET_HTTP_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace benchforge::net {

struct HttpRequest {
  std::string url;  // scheme://host[:port]/path
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;
  int timeout_seconds = 60;
};

struct HttpResponse {
  int status = 0;  // 0 when the request never produced a response
  std::string body;
  std::string error;  // transport error description when status == 0
};

// Minimal POST transport so remote clients can be tested with fakes.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse Post(const HttpRequest& request) = 0;
};

// cpp-httplib backed transport. https URLs need a TLS-enabled build.
std::shared_ptr<HttpTransport> MakeHttpTransport();

}  // namespace benchforge::net

#endif  // BENCHFORGE_NET_HTTP_H_
