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

#include "benchforge/server/server.h"

#include <atomic>
#include <thread>

#include "httplib.h"
#include "benchforge/evaluation/database.h"
#include "benchforge/sql/parser.h"

namespace benchforge::server {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

void SendJson(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void SendError(httplib::Response& res, int status, std::string_view code,
               const std::string& message) {
  SendJson(res, status, {{"code", std::string(code)}, {"message", message}});
}

json Body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json j = json::parse(req.body, nullptr, false);
  if (j.is_discarded()) Fail(ErrorCode::kInvalidArgument, "request body is not JSON");
  return j;
}

// Ingest endpoints take either {"text": ...} or the raw document.
std::string TextOf(const httplib::Request& req, const json& body) {
  if (body.is_object() && body.contains("text")) {
    if (!body["text"].is_string()) Fail(ErrorCode::kInvalidArgument, "\"text\" must be a string");
    return body["text"].get<std::string>();
  }
  return req.body;
}

json ParsedOrRaw(const httplib::Request& req) {
  json j = json::parse(req.body, nullptr, false);
  return j.is_discarded() ? json(nullptr) : j;
}

std::string Annotator(const httplib::Request& req, const json& body) {
  std::string id = req.get_header_value("X-Annotator-Id");
  if (id.empty() && body.is_object() && body.contains("annotator_id") &&
      body["annotator_id"].is_string())
    id = body["annotator_id"].get<std::string>();
  if (id.empty()) Fail(ErrorCode::kInvalidArgument, "annotator id required (X-Annotator-Id)");
  return id;
}

std::pair<std::string, std::string> SplitKey(const std::string& key) {
  size_t colon = key.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == key.size())
    Fail(ErrorCode::kInvalidArgument, "item key must be <project>:<item>");
  return {key.substr(0, colon), key.substr(colon + 1)};
}

}  // namespace

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kDuplicateName:
    case ErrorCode::kLeaseMismatch:
    case ErrorCode::kInvalidTransition:
    case ErrorCode::kUnknownCandidate:
    case ErrorCode::kQueueEmpty:
    case ErrorCode::kNothingAccepted:
    case ErrorCode::kNoAcceptedItems:
      return 409;
    case ErrorCode::kNotImplemented:
      return 501;
    case ErrorCode::kBackendError:
    case ErrorCode::kEmptyCompletion:
    case ErrorCode::kEmbedderUnavailable:
      return 502;
    case ErrorCode::kIoError:
    case ErrorCode::kExecError:
      return 500;
    default:
      return 400;
  }
}

struct ApiServer::Impl {
  ServerConfig config;
  std::shared_ptr<workflow::Workspace> ws;
  httplib::Server http;
  int port = -1;
  std::thread thread;

  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  bool Authorized(const httplib::Request& req) const {
    return req.get_header_value("Authorization") == "Bearer " + config.token;
  }

  Handler Wrap(bool mutating, Handler fn) {
    return [this, mutating, fn = std::move(fn)](const httplib::Request& req,
                                                  httplib::Response& res) {
      if (mutating && !Authorized(req)) {
        SendError(res, 401, "Unauthorized", "missing or wrong bearer token");
        return;
      }
      try {
        fn(req, res);
      } catch (const Error& e) {
        SendError(res, HttpStatusFor(e.code()), ErrorCodeName(e.code()), e.what());
      } catch (const json::exception& e) {
        SendError(res, 400, ErrorCodeName(ErrorCode::kInvalidArgument), e.what());
      } catch (const std::exception& e) {
        SendError(res, 500, "Internal", e.what());
      }
    };
  }

  void Routes() {
    using Req = httplib::Request;
    using Res = httplib::Response;
    const std::string project = R"(/api/projects/([A-Za-z0-9][A-Za-z0-9_.\-]*))";
    const std::string item = R"(/api/items/([^/]+))";

    http.set_post_routing_handler([this](const Req&, Res& res) {
      res.set_header("Access-Control-Allow-Origin", config.cors_origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers",
                     "Authorization, Content-Type, X-Annotator-Id");
    });
    http.Options(".*", [](const Req&, Res& res) { res.status = 204; });

    http.Get("/api/health", Wrap(false, [](const Req&, Res& res) {
               SendJson(res, 200, {{"status", "ok"}});
             }));

    http.Get("/api/projects", Wrap(false, [this](const Req&, Res& res) {
               json out = json::array();
               for (const auto& p : ws->ListProjects()) out.push_back(workflow::ToJson(p));
               SendJson(res, 200, out);
             }));

    http.Post("/api/projects", Wrap(true, [this](const Req& req, Res& res) {
                json body = Body(req);
                std::string name = body.value("name", "");
                auto dialect = sql::DialectFromName(body.value("dialect", "generic"));
                if (!dialect) Fail(ErrorCode::kInvalidArgument, "unknown dialect");
                workflow::ProjectConfig cfg =
                    workflow::ProjectConfigFromJson(body.value("config", json::object()));
                SendJson(res, 201, workflow::ToJson(ws->CreateProject(name, *dialect, cfg)));
              }));

    http.Get(project, Wrap(false, [this](const Req& req, Res& res) {
               workflow::ProjectState st = ws->Snapshot(req.matches[1]);
               json counts = json::object();
               for (auto s : {workflow::ItemState::kPending, workflow::ItemState::kDrafted,
                              workflow::ItemState::kInReview, workflow::ItemState::kAccepted,
                              workflow::ItemState::kDiscarded})
                 counts[std::string(workflow::ItemStateName(s))] = 0;
               for (const auto& it : st.items)
                 counts[std::string(workflow::ItemStateName(it.state))] =
                     counts[std::string(workflow::ItemStateName(it.state))].get<int>() + 1;
               json out = workflow::ToJson(st.project);
               out["item_counts"] = counts;
               out["query_count"] = st.queries.size();
               out["tables"] = st.catalog ? st.catalog->ToJson() : json(nullptr);
               SendJson(res, 200, out);
             }));

    http.Post(project + "/schema", Wrap(true, [this](const Req& req, Res& res) {
                json body = ParsedOrRaw(req);
                std::string text = TextOf(req, body);
                sql::SchemaFormat format = sql::SchemaFormat::kAuto;
                std::string schema_id;
                if (body.is_object() && body.contains("text")) {
                  std::string f = body.value("format", "auto");
                  format = f == "ddl"    ? sql::SchemaFormat::kDdl
                           : f == "json" ? sql::SchemaFormat::kJson
                                         : sql::SchemaFormat::kAuto;
                  schema_id = body.value("schema_id", "");
                }
                SendJson(res, 200, ws->IngestSchema(req.matches[1], text, format, schema_id).ToJson());
              }));

    http.Post(project + "/queries", Wrap(true, [this](const Req& req, Res& res) {
                json body = ParsedOrRaw(req);
                std::string text = TextOf(req, body);
                workflow::IngestOptions opts;
                if (body.is_object() && body.contains("text")) {
                  opts.source_tag = body.value("source_tag", "");
                  opts.accept_references = body.value("accept_references", false);
                }
                SendJson(res, 200, workflow::ToJson(ws->IngestQueries(req.matches[1], text, opts)));
              }));

    http.Post(project + "/next", Wrap(true, [this](const Req& req, Res& res) {
                json body = Body(req);
                SendJson(res, 200,
                         workflow::ToJson(ws->AnnotateNext(req.matches[1], Annotator(req, body))));
              }));

    http.Get(project + "/items", Wrap(false, [this](const Req& req, Res& res) {
               std::optional<workflow::ItemState> state;
               if (req.has_param("state")) {
                 state = workflow::ItemStateFromName(req.get_param_value("state"));
                 if (!state) Fail(ErrorCode::kInvalidArgument, "unknown state");
               }
               json out = json::array();
               for (const auto& it : ws->ListItems(req.matches[1], state))
                 out.push_back(workflow::ToJson(it));
               SendJson(res, 200, out);
             }));

    http.Post(project + "/export", Wrap(true, [this](const Req& req, Res& res) {
                json body = Body(req);
                std::string path = body.value("path", "");
                auto summary = ws->Export(req.matches[1], path);
                json records = json::parse(ws->ExportJson(req.matches[1]));
                SendJson(res, 200,
                         {{"count", summary.count}, {"path", summary.path}, {"records", records}});
              }));

    http.Post(project + "/evaluate", Wrap(true, [this](const Req& req, Res& res) {
                json body = Body(req);
                std::string dir = body.value("db_dir", config.default_db_dir);
                if (dir.empty()) Fail(ErrorCode::kInvalidArgument, "no fixture database configured");
                auto db = evaluation::Database::OpenFixture(dir);
                SendJson(res, 200, evaluation::ToJson(ws->Evaluate(req.matches[1], db)));
              }));

    http.Get(project + "/report", Wrap(false, [this](const Req& req, Res& res) {
               auto report = ws->LastReport(req.matches[1]);
               if (!report) Fail(ErrorCode::kNotFound, "no evaluation report yet");
               SendJson(res, 200, evaluation::ToJson(*report));
             }));

    http.Get(item, Wrap(false, [this](const Req& req, Res& res) {
               auto [p, target] = SplitKey(req.matches[1]);
               workflow::ProjectState st = ws->Snapshot(p);
               const workflow::AnnotationItem* it = st.FindItem(workflow::ItemIdOf(target));
               if (!it || !it->FindTask(target))
                 Fail(ErrorCode::kNotFound, "unknown item \"" + target + "\"");
               SendJson(res, 200,
                        {{"project_id", p},
                         {"target_id", target},
                         {"item", workflow::ToJson(*it)},
                         {"query", workflow::ToJson(*st.FindQuery(it->query_id))},
                         {"rubric_override", st.overrides.count(it->item_id)
                                                 ? evaluation::ToJson(st.overrides.at(it->item_id))
                                                 : json(nullptr)}});
             }));

    http.Post(item + "/feedback", Wrap(true, [this](const Req& req, Res& res) {
                auto [p, target] = SplitKey(req.matches[1]);
                json body = Body(req);
                auto kind = workflow::FeedbackKindFromName(body.value("kind", ""));
                if (!kind) Fail(ErrorCode::kInvalidArgument, "unknown feedback kind");
                json payload = body.value("payload", json::object());
                SendJson(res, 200,
                         workflow::ToJson(ws->SubmitFeedback(p, target, Annotator(req, body),
                                                             *kind, payload)));
              }));

    http.Post(item + "/accept", Wrap(true, [this](const Req& req, Res& res) {
                auto [p, target] = SplitKey(req.matches[1]);
                json body = Body(req);
                std::optional<std::string> text;
                if (body.contains("final_text") && body["final_text"].is_string())
                  text = body["final_text"].get<std::string>();
                if (!body.contains("candidate_id") || !body["candidate_id"].is_string())
                  Fail(ErrorCode::kInvalidArgument, "candidate_id required");
                SendJson(res, 200,
                         workflow::ToJson(ws->Accept(p, target, Annotator(req, body),
                                                     body["candidate_id"].get<std::string>(),
                                                     text)));
              }));

    http.Post(item + "/release", Wrap(true, [this](const Req& req, Res& res) {
                auto [p, target] = SplitKey(req.matches[1]);
                json body = Body(req);
                SendJson(res, 200,
                         workflow::ToJson(ws->Release(p, workflow::ItemIdOf(target),
                                                      Annotator(req, body))));
              }));

    http.Post(item + "/rubric", Wrap(true, [this](const Req& req, Res& res) {
                auto [p, target] = SplitKey(req.matches[1]);
                json body = Body(req);
                if (!body.contains("level") || !body["level"].is_number_integer())
                  Fail(ErrorCode::kInvalidArgument, "level must be an integer 1..5");
                SendJson(res, 200,
                         evaluation::ToJson(ws->OverrideRubric(
                             p, workflow::ItemIdOf(target), Annotator(req, body),
                             body["level"].get<int>(), body.value("rationale", ""))));
              }));
  }
};

ApiServer::ApiServer(ServerConfig config, std::shared_ptr<workflow::Workspace> workspace)
    : impl_(std::make_unique<Impl>()) {
  if (config.token.empty())
    Fail(ErrorCode::kInvalidArgument, "a bearer token is required (BENCHFORGE_TOKEN)");
  if (!workspace) Fail(ErrorCode::kInvalidArgument, "no workspace");
  impl_->config = std::move(config);
  impl_->ws = std::move(workspace);
  int threads = std::max(1, impl_->config.threads);
  impl_->http.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  // The library default (SO_REUSEPORT) would let a second server share the
  // port silently.
  impl_->http.set_socket_options([](int sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  impl_->Routes();
}

ApiServer::~ApiServer() { Stop(); }

int ApiServer::Bind() {
  if (impl_->port > 0) return impl_->port;
  const auto& c = impl_->config;
  if (c.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(c.host);
  } else if (impl_->http.bind_to_port(c.host, c.port)) {
    impl_->port = c.port;
  }
  if (impl_->port <= 0)
    Fail(ErrorCode::kIoError, "cannot bind " + c.host + ":" + std::to_string(c.port) +
                                  " (address in use?)");
  return impl_->port;
}

void ApiServer::Run() {
  Bind();
  impl_->http.listen_after_bind();
}

void ApiServer::Start() {
  Bind();
  impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
}

void ApiServer::Stop() {
  impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int ApiServer::port() const { return impl_->port; }

}  // namespace benchforge::server
