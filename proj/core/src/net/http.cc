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
#include "benchforge/net/http.h"

#include <httplib.h>

namespace benchforge::net {
namespace {

class HttplibTransport : public HttpTransport {
 public:
  HttpResponse Post(const HttpRequest& request) override {
    HttpResponse out;
    const std::string& url = request.url;
    size_t scheme_end = url.find("://");
    size_t path_start =
        url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    std::string origin = url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    if (!client.is_valid()) {
      out.error = "unsupported URL " + url;
      return out;
    }
    client.set_connection_timeout(request.timeout_seconds, 0);
    client.set_read_timeout(request.timeout_seconds, 0);
    client.set_write_timeout(request.timeout_seconds, 0);
    httplib::Headers headers;
    for (const auto& [k, v] : request.headers) headers.emplace(k, v);
    auto result = client.Post(path, headers, request.body, "application/json");
    if (!result) {
      out.error = httplib::to_string(result.error());
      return out;
    }
    out.status = result->status;
    out.body = result->body;
    return out;
  }
};

}  // namespace

std::shared_ptr<HttpTransport> MakeHttpTransport() {
  return std::make_shared<HttplibTransport>();
}

}  // namespace benchforge::net
