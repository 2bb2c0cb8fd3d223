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

#include "cli/cli.h"

#include <signal.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "benchforge/error.h"
#include "benchforge/evaluation/database.h"
#include "benchforge/evaluation/report.h"
#include "benchforge/server/server.h"
#include "benchforge/sql/parser.h"
#include "benchforge/workflow/workspace.h"

namespace benchforge::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr char kCurrentFile[] = "CURRENT";
constexpr char kDefaultRoot[] = ".benchforge";

// Missing project or similar: reported like a usage error.
struct UsageError {
  std::string message;
};

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::string& path, const std::string& text) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << text;
  if (!out.flush()) throw Error(ErrorCode::kIoError, "write failed: " + path);
}

std::string Env(const char* name) {
  const char* v = std::getenv(name);
  return v ? v : "";
}

struct Globals {
  std::string root;
  std::string project;
  std::string annotator;
  std::string config_path;
  bool json_output = false;
  json config = json::object();  // --config contents
};

class Context {
 public:
  Context(Globals& g, std::ostream& out, std::ostream& err) : g_(g), out_(out), err_(err) {}

  void LoadConfig() {
    if (!g_.config_path.empty()) {
      try {
        g_.config = json::parse(ReadText(g_.config_path));
      } catch (const json::exception& e) {
        throw Error(ErrorCode::kInvalidArgument,
                    "config " + g_.config_path + ": " + e.what());
      }
      if (!g_.config.is_object())
        throw Error(ErrorCode::kInvalidArgument, "config must be a JSON object");
    }
    if (g_.root.empty()) g_.root = g_.config.value("root", "");
    if (g_.root.empty()) g_.root = Env("BENCHFORGE_ROOT");
    if (g_.root.empty()) g_.root = kDefaultRoot;
    if (g_.annotator.empty()) g_.annotator = g_.config.value("annotator", "");
    if (g_.annotator.empty()) g_.annotator = Env("BENCHFORGE_ANNOTATOR");
    if (g_.annotator.empty()) g_.annotator = "cli";
  }

  workflow::Workspace& ws() {
    if (!ws_) ws_ = std::make_shared<workflow::Workspace>(workflow::Workspace::Options{g_.root});
    return *ws_;
  }
  std::shared_ptr<workflow::Workspace> shared_ws() {
    ws();
    return ws_;
  }

  std::string Project() {
    if (!g_.project.empty()) return g_.project;
    std::string p = g_.config.value("project", "");
    if (!p.empty()) return p;
    std::ifstream in(fs::path(g_.root) / kCurrentFile);
    if (in && std::getline(in, p) && !p.empty()) return p;
    throw UsageError{"no project selected; run init or pass --project"};
  }

  void SetCurrent(const std::string& project) {
    WriteText((fs::path(g_.root) / kCurrentFile).string(), project + "\n");
  }

  const Globals& g() const { return g_; }
  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

  // JSON mode prints |j|; otherwise |human|.
  void Print(const json& j, const std::string& human) {
    if (g_.json_output)
      out_ << j.dump(2) << "\n";
    else
      out_ << human;
  }

 private:
  Globals& g_;
  std::ostream& out_;
  std::ostream& err_;
  std::shared_ptr<workflow::Workspace> ws_;
};

std::string ItemLine(const workflow::AnnotationItem& item) {
  std::ostringstream ss;
  ss << item.item_id << "  " << workflow::ItemStateName(item.state);
  if (item.nested()) {
    size_t done = 0;
    for (const auto& s : item.sub_items)
      if (s.state == workflow::ItemState::kAccepted) done++;
    ss << "  parts " << done << "/" << item.sub_items.size();
  }
  if (!item.accepted_text.empty()) ss << "  " << item.accepted_text;
  ss << "\n";
  return ss.str();
}

std::string ServedText(const workflow::ServedItem& s) {
  std::ostringstream ss;
  ss << "target " << s.target_id << "\n" << s.target_sql << "\n";
  const auto* task = s.item.FindTask(s.target_id);
  if (task) {
    for (const auto& c : task->candidates) {
      if (c.status == generation::CandidateStatus::kDiscarded) continue;
      ss << "  [" << c.candidate_id << "]";
      if (c.rank) ss << " #" << *c.rank;
      ss << " " << c.text << "\n";
    }
  }
  return ss.str();
}

// Rank 1 when ranked, else the first proposed candidate.
const generation::Candidate* TopCandidate(const workflow::AnnotationTask& task) {
  const generation::Candidate* first = nullptr;
  for (const auto& c : task.candidates) {
    if (c.status == generation::CandidateStatus::kDiscarded) continue;
    if (c.rank && *c.rank == 1) return &c;
    if (!first) first = &c;
  }
  return first;
}

int CmdInit(Context& ctx, const std::string& name, const std::string& dialect_name,
            const std::string& backend, std::optional<int> n_candidates,
            std::optional<uint64_t> seed, const std::string& direction) {
  auto dialect = sql::DialectFromName(dialect_name);
  if (!dialect) throw Error(ErrorCode::kInvalidArgument, "unknown dialect: " + dialect_name);
  workflow::ProjectConfig config;
  if (ctx.g().config.contains("project_config"))
    config = workflow::ProjectConfigFromJson(ctx.g().config["project_config"]);
  if (!backend.empty()) config.backend = backend;
  if (n_candidates) config.params.n_candidates = *n_candidates;
  if (seed) config.params.seed = *seed;
  if (!direction.empty()) config.direction = workflow::DirectionFromName(direction);
  auto project = ctx.ws().CreateProject(name, *dialect, config);
  ctx.SetCurrent(project.project_id);
  ctx.Print(workflow::ToJson(project), "created project " + project.project_id + " in " +
                                           ctx.ws().ProjectDir(project.project_id) + "\n");
  return kExitOk;
}

int CmdIngest(Context& ctx, const std::string& queries, const std::string& schema,
              const std::string& schema_id, const std::string& source_tag,
              bool accept_references) {
  if (queries.empty() && schema.empty())
    throw UsageError{"ingest needs --queries and/or --schema"};
  std::string project = ctx.Project();
  json result = json::object();
  std::ostringstream human;
  if (!schema.empty()) {
    auto catalog = ctx.ws().IngestSchema(project, ReadText(schema), sql::SchemaFormat::kAuto,
                                         schema_id);
    json tables = json::array();
    for (const auto& t : catalog.tables()) tables.push_back(t.name);
    result["schema"] = {{"schema_id", catalog.schema_id()}, {"tables", tables}};
    human << "schema " << catalog.schema_id() << ": " << tables.size() << " tables\n";
  }
  if (!queries.empty()) {
    workflow::IngestOptions opts;
    if (!source_tag.empty()) opts.source_tag = source_tag;
    opts.accept_references = accept_references;
    auto report = ctx.ws().IngestQueries(project, ReadText(queries), opts);
    result["queries"] = workflow::ToJson(report);
    human << "statements " << report.statements << ", accepted " << report.accepted
          << ", duplicates " << report.skipped_duplicate << ", non-select "
          << report.skipped_non_select << ", parse failures " << report.parse_failures << "\n";
    for (const auto& f : report.failures)
      human << "  #" << f.index << " " << f.code << ": " << f.message << "\n";
  }
  ctx.Print(result, human.str());
  return kExitOk;
}

int CmdAnnotate(Context& ctx, bool auto_accept, std::optional<size_t> limit) {
  std::string project = ctx.Project();
  auto& ws = ctx.ws();
  if (!auto_accept) {
    auto served = ws.AnnotateNext(project, ctx.g().annotator);
    ctx.Print(workflow::ToJson(served), ServedText(served));
    return kExitOk;
  }
  ctx.err() << "warning: --auto-accept-rank1 accepts unreviewed candidates; "
               "the output is not human-verified\n";
  size_t accepted = 0;
  json targets = json::array();
  while (!limit || accepted < *limit) {
    workflow::ServedItem served;
    try {
      served = ws.AnnotateNext(project, ctx.g().annotator);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kQueueEmpty) break;
      throw;
    }
    const auto* task = served.item.FindTask(served.target_id);
    const auto* top = task ? TopCandidate(*task) : nullptr;
    if (!top) {
      // Nothing to accept; drop the item so the loop makes progress.
      ws.SubmitFeedback(project, served.item.item_id, ctx.g().annotator,
                        workflow::FeedbackKind::kDiscard, {{"reason", "no candidates"}});
      continue;
    }
    ws.Accept(project, served.target_id, ctx.g().annotator, top->candidate_id);
    targets.push_back({{"target_id", served.target_id}, {"candidate_id", top->candidate_id}});
    accepted++;
  }
  ctx.Print({{"accepted", accepted}, {"targets", targets}},
            "accepted " + std::to_string(accepted) + " targets\n");
  return kExitOk;
}

struct FeedbackArgs {
  std::string kind;
  std::string target;
  std::string candidate;
  std::string text;
  std::string note;
  std::string reason;
  std::vector<std::string> order;
  std::optional<std::string> final_text;
};

int CmdFeedback(Context& ctx, const FeedbackArgs& a) {
  auto kind = workflow::FeedbackKindFromName(a.kind);
  if (!kind) throw UsageError{"unknown feedback kind: " + a.kind};
  std::string project = ctx.Project();
  workflow::AnnotationItem item;
  if (*kind == workflow::FeedbackKind::kAccept) {
    if (a.candidate.empty()) throw UsageError{"accept needs --candidate"};
    item = ctx.ws().Accept(project, a.target, ctx.g().annotator, a.candidate, a.final_text);
  } else {
    json payload = json::object();
    if (!a.candidate.empty()) payload["candidate_id"] = a.candidate;
    if (!a.text.empty()) payload["text"] = a.text;
    if (!a.note.empty()) payload["note"] = a.note;
    if (!a.reason.empty()) payload["reason"] = a.reason;
    if (!a.order.empty()) payload["order"] = a.order;
    item = ctx.ws().SubmitFeedback(project, a.target, ctx.g().annotator, *kind, payload);
  }
  ctx.Print(workflow::ToJson(item), ItemLine(item));
  return kExitOk;
}

int CmdRelease(Context& ctx, const std::string& item_id) {
  auto item = ctx.ws().Release(ctx.Project(), item_id, ctx.g().annotator);
  ctx.Print(workflow::ToJson(item), ItemLine(item));
  return kExitOk;
}

int CmdItems(Context& ctx, const std::string& state_name) {
  std::optional<workflow::ItemState> state;
  if (!state_name.empty()) {
    state = workflow::ItemStateFromName(state_name);
    if (!state) throw UsageError{"unknown state: " + state_name};
  }
  auto items = ctx.ws().ListItems(ctx.Project(), state);
  json j = json::array();
  std::string human;
  for (const auto& item : items) {
    j.push_back(workflow::ToJson(item));
    human += ItemLine(item);
  }
  ctx.Print(j, human);
  return kExitOk;
}

int CmdProjects(Context& ctx) {
  json j = json::array();
  std::string human;
  for (const auto& p : ctx.ws().ListProjects()) {
    j.push_back(workflow::ToJson(p));
    human += p.project_id + "  " + std::string(sql::DialectName(p.dialect)) + "\n";
  }
  ctx.Print(j, human);
  return kExitOk;
}

int CmdExport(Context& ctx, const std::string& out_path) {
  auto summary = ctx.ws().Export(ctx.Project(), out_path);
  ctx.Print({{"count", summary.count}, {"path", summary.path}},
            "exported " + std::to_string(summary.count) + " records to " + summary.path + "\n");
  return kExitOk;
}

int CmdEval(Context& ctx, const std::string& db_dir, const std::string& out_path) {
  std::string project = ctx.Project();
  auto db = evaluation::Database::OpenFixture(db_dir);
  auto report = ctx.ws().Evaluate(project, db);
  json j = evaluation::ToJson(report);
  std::string text = evaluation::HistogramText(report);
  if (!out_path.empty()) {
    WriteText(out_path, j.dump(2) + "\n");
    fs::path txt(out_path);
    txt.replace_extension(".txt");
    if (txt != fs::path(out_path)) WriteText(txt.string(), text);
  }
  std::ostringstream human;
  human << "execution accuracy " << report.execution_accuracy << " over " << report.items.size()
        << " items\n"
        << text;
  ctx.Print(j, human.str());
  return kExitOk;
}

int CmdReport(Context& ctx) {
  auto report = ctx.ws().LastReport(ctx.Project());
  if (!report) throw Error(ErrorCode::kNotFound, "no evaluation report yet");
  ctx.Print(evaluation::ToJson(*report), evaluation::HistogramText(*report));
  return kExitOk;
}

int CmdServe(Context& ctx, server::ServerConfig config) {
  if (config.token.empty()) config.token = ctx.g().config.value("token", "");
  if (config.token.empty()) config.token = Env("BENCHFORGE_TOKEN");
  if (config.token.empty())
    throw Error(ErrorCode::kInvalidArgument, "set BENCHFORGE_TOKEN to start the server");

  // Worker threads inherit the mask; the main thread waits for the signal.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  server::ApiServer srv(config, ctx.shared_ws());
  int port = srv.Bind();
  srv.Start();
  ctx.Print({{"host", config.host}, {"port", port}, {"root", ctx.g().root}},
            "serving " + ctx.g().root + " on http://" + config.host + ":" +
                std::to_string(port) + "\n");
  ctx.out().flush();
  int sig = 0;
  sigwait(&set, &sig);
  srv.Stop();
  return kExitOk;
}

int ReportError(Context& ctx, const std::string& code, const std::string& message) {
  if (ctx.g().json_output)
    ctx.out() << json{{"code", code}, {"message", message}}.dump() << "\n";
  else
    ctx.err() << "error: " << code << ": " << message << "\n";
  return kExitDomainError;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  Context ctx(g, out, err);

  CLI::App app{"Curate SQL/natural-language benchmark pairs.", "benchforge"};
  app.require_subcommand(1);
  app.add_option("--root", g.root, "Workspace directory (BENCHFORGE_ROOT, default .benchforge)");
  app.add_option("--project,-p", g.project, "Project id (default: the last one created)");
  app.add_option("--annotator", g.annotator, "Annotator id (BENCHFORGE_ANNOTATOR, default cli)");
  app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_flag("--json", g.json_output, "Machine-readable output");

  std::function<int()> action;

  auto* init = app.add_subcommand("init", "Create a project and make it current");
  std::string name, dialect = "generic", backend, direction;
  std::optional<int> n_candidates;
  std::optional<uint64_t> seed;
  init->add_option("name", name, "Project name")->required();
  init->add_option("--dialect", dialect, "generic, sqlite or postgres");
  init->add_option("--backend", backend, "mock or remote");
  init->add_option("--n-candidates", n_candidates, "Candidates per item")->check(CLI::Range(1, 16));
  init->add_option("--seed", seed, "Sampling seed");
  init->add_option("--direction", direction, "sql_to_nl");
  init->callback([&] {
    action = [&] { return CmdInit(ctx, name, dialect, backend, n_candidates, seed, direction); };
  });

  auto* ingest = app.add_subcommand("ingest", "Load a schema and/or a query log");
  std::string queries, schema, schema_id, source_tag;
  bool accept_refs = false;
  ingest->add_option("--queries", queries, "SQL file or JSON benchmark")->check(CLI::ExistingFile);
  ingest->add_option("--schema", schema, "DDL or JSON schema")->check(CLI::ExistingFile);
  ingest->add_option("--schema-id", schema_id, "Schema id (default: project id)");
  ingest->add_option("--source-tag", source_tag, "Provenance tag for ingested queries");
  ingest->add_flag("--accept-references", accept_refs,
                   "Import reference questions as accepted items");
  ingest->callback([&] {
    action = [&] {
      return CmdIngest(ctx, queries, schema, schema_id, source_tag, accept_refs);
    };
  });

  auto* annotate = app.add_subcommand("annotate", "Lease the next item and show its candidates");
  bool auto_accept = false;
  std::optional<size_t> limit;
  annotate->add_flag("--auto-accept-rank1", auto_accept,
                     "Accept the top candidate of every item without review (not "
                     "human-in-the-loop; for smoke tests)");
  annotate->add_option("--limit", limit, "Stop after this many accepts");
  annotate->callback([&] { action = [&] { return CmdAnnotate(ctx, auto_accept, limit); }; });

  auto* feedback = app.add_subcommand("feedback", "Rank, edit, refine, discard, accept, reopen or flag");
  FeedbackArgs fb;
  feedback->add_option("kind", fb.kind, "rank|edit|discard|refine|accept|reopen|flag")->required();
  feedback->add_option("target", fb.target, "Item or sub-item id")->required();
  feedback->add_option("--candidate", fb.candidate, "Candidate id");
  feedback->add_option("--text", fb.text, "Edited text");
  feedback->add_option("--note", fb.note, "Refinement or flag note");
  feedback->add_option("--reason", fb.reason, "Discard reason");
  feedback->add_option("--order", fb.order, "Candidate ids, best first")->delimiter(',');
  feedback->add_option("--final-text", fb.final_text, "Accepted text if it differs");
  feedback->callback([&] { action = [&] { return CmdFeedback(ctx, fb); }; });

  auto* release = app.add_subcommand("release", "Give up the lease on an item");
  std::string release_id;
  release->add_option("item", release_id, "Item id")->required();
  release->callback([&] { action = [&] { return CmdRelease(ctx, release_id); }; });

  auto* items = app.add_subcommand("items", "List items");
  std::string state;
  items->add_option("--state", state, "pending|drafted|in_review|accepted|discarded");
  items->callback([&] { action = [&] { return CmdItems(ctx, state); }; });

  auto* projects = app.add_subcommand("projects", "List projects");
  projects->callback([&] { action = [&] { return CmdProjects(ctx); }; });

  auto* exp = app.add_subcommand("export", "Write accepted pairs as a JSON benchmark");
  std::string export_out;
  exp->add_option("--out,-o", export_out, "Output file (default: <project>/export.json)");
  exp->callback([&] { action = [&] { return CmdExport(ctx, export_out); }; });

  auto* eval = app.add_subcommand("eval", "Backtranslate accepted items and grade them");
  std::string db_dir, eval_out;
  eval->add_option("--db", db_dir, "Fixture database directory")->required()->check(CLI::ExistingDirectory);
  eval->add_option("--out,-o", eval_out, "Report JSON path; the histogram goes next to it as .txt");
  eval->callback([&] { action = [&] { return CmdEval(ctx, db_dir, eval_out); }; });

  auto* report = app.add_subcommand("report", "Show the last evaluation report");
  report->callback([&] { action = [&] { return CmdReport(ctx); }; });

  auto* serve = app.add_subcommand("serve", "Run the HTTP API (token from BENCHFORGE_TOKEN)");
  server::ServerConfig sc;
  serve->add_option("--host", sc.host, "Bind address");
  serve->add_option("--port", sc.port, "Port, 0 for any")->check(CLI::Range(0, 65535));
  serve->add_option("--db", sc.default_db_dir, "Default fixture database for /evaluate");
  serve->add_option("--cors-origin", sc.cors_origin, "Access-Control-Allow-Origin");
  serve->add_option("--threads", sc.threads, "Worker threads")->check(CLI::Range(1, 256));
  serve->callback([&] { action = [&] { return CmdServe(ctx, sc); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    ctx.LoadConfig();
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    return ReportError(ctx, std::string(ErrorCodeName(e.code())), e.what());
  } catch (const std::exception& e) {
    return ReportError(ctx, "IoError", e.what());
  }
}

}  // namespace benchforge::cli
