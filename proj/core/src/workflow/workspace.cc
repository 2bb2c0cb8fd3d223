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

#include "benchforge/workflow/workspace.h"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "benchforge/error.h"
#include "benchforge/generation/generate.h"
#include "benchforge/generation/prompt.h"
#include "benchforge/retrieval/retrieve.h"
#include "benchforge/sql/parser.h"

namespace benchforge::workflow {

namespace fs = std::filesystem;
using generation::Candidate;
using nlohmann::json;

namespace {

constexpr char kLogFile[] = "events.jsonl";
constexpr char kReportJson[] = "eval_report.json";
constexpr char kReportText[] = "eval_report.txt";

[[noreturn]] void Fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

[[noreturn]] void FailErrno(const std::string& what) {
  throw Error(ErrorCode::kIoError, what + ": " + std::strerror(errno));
}

void WriteFileAtomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorCode::kIoError, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) Fail(ErrorCode::kIoError, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) Fail(ErrorCode::kIoError, "cannot rename to " + path.string() + ": " + ec.message());
}

bool IsValidItemId(std::string_view id) {
  static const std::regex re("[A-Za-z0-9][A-Za-z0-9_-]*");
  return id.size() <= 128 && std::regex_match(id.begin(), id.end(), re);
}

const AnnotationTask& TaskOrThrow(const AnnotationItem& item, const std::string& target_id) {
  const AnnotationTask* task = item.FindTask(target_id);
  if (!task) Fail(ErrorCode::kNotFound, "unknown target \"" + target_id + "\"");
  return *task;
}

}  // namespace

bool IsValidProjectName(std::string_view name) {
  static const std::regex re("[A-Za-z0-9][A-Za-z0-9_.-]*");
  return !name.empty() && name.size() <= 128 && std::regex_match(name.begin(), name.end(), re);
}

json ToJson(const ServedItem& s) {
  json tables = json::array();
  for (const auto& t : s.tables) {
    json cols = json::array();
    for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"type", c.type}});
    tables.push_back({{"name", t.name}, {"columns", cols}, {"primary_key", t.primary_key}});
  }
  json examples = json::array();
  for (const auto& e : s.examples)
    examples.push_back({{"sql", e.sql}, {"nl", e.nl}, {"item_id", e.item_id}});
  return {{"item", ToJson(s.item)},          {"target_id", s.target_id},
          {"target_sql", s.target_sql},       {"tables", tables},
          {"examples", examples},             {"prompt", s.prompt},
          {"lease_expires_at", s.lease_expires_at}};
}

// One open project: its replayed state, log file and retrieval index.
class Workspace::Handle {
 public:
  Handle(const Workspace& ws, fs::path dir) : ws_(ws), dir_(std::move(dir)) {}

  ~Handle() {
    if (fd_ >= 0) ::close(fd_);
  }

  void OpenLog(bool create) {
    fs::path path = dir_ / kLogFile;
    int flags = O_RDWR | O_APPEND | O_CLOEXEC | (create ? O_CREAT | O_EXCL : 0);
    fd_ = ::open(path.c_str(), flags, 0644);
    if (fd_ < 0) {
      if (create && errno == EEXIST) Fail(ErrorCode::kDuplicateName, "project exists");
      FailErrno("open " + path.string());
    }
  }

  // Holds the handle mutex and the file lock; catches up on entry.
  class Txn {
   public:
    Txn(Handle& h, bool exclusive) : h_(h), lock_(h.mu_) {
      while (::flock(h_.fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
        if (errno != EINTR) FailErrno("flock");
      }
      try {
        h_.CatchUp();
      } catch (...) {
        ::flock(h_.fd_, LOCK_UN);
        throw;
      }
    }
    ~Txn() { ::flock(h_.fd_, LOCK_UN); }

   private:
    Handle& h_;
    std::unique_lock<std::mutex> lock_;
  };

  ProjectState& state() { return state_; }
  const Project& project() const { return state_.project; }

  // Validates and applies |type|/|data|, then appends it to the log.
  const LogEvent& Commit(std::string type, std::string actor, json data, int64_t now) {
    LogEvent ev;
    ev.seq = state_.last_seq + 1;
    ev.type = std::move(type);
    ev.at = now;
    ev.time = IsoTime(now);
    ev.actor = std::move(actor);
    ev.data = std::move(data);
    std::vector<std::string> old_tables = TableNames();
    Apply(state_, ev);
    std::string line = ToJson(ev).dump() + "\n";
    const char* p = line.data();
    size_t left = line.size();
    while (left > 0) {
      ssize_t n = ::write(fd_, p, left);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        int saved = errno;
        Reload();
        errno = saved;
        FailErrno("append to log");
      }
      p += n;
      left -= static_cast<size_t>(n);
    }
    if (ws_.options_.fsync) ::fdatasync(fd_);
    offset_ += static_cast<off_t>(line.size());
    last_ = std::move(ev);
    Index(last_, old_tables);
    return last_;
  }

  const LogEvent& Commit(std::string_view type, const std::string& actor, json data,
                         int64_t now) {
    return Commit(std::string(type), actor, std::move(data), now);
  }

  retrieval::Embedder& embedder() { return *embedder_; }
  const retrieval::VectorIndex& index() const { return *index_; }

  std::shared_ptr<generation::CompletionBackend> backend() {
    if (!backend_) {
      backend_ = ws_.options_.backend_factory
                     ? ws_.options_.backend_factory(state_.project)
                     : std::shared_ptr<generation::CompletionBackend>(
                           generation::MakeBackend(state_.project.config.backend));
    }
    return backend_;
  }

  const fs::path& dir() const { return dir_; }

 private:
  void EnsureIndex() {
    if (index_) return;
    embedder_ = ws_.options_.embedder_factory
                    ? ws_.options_.embedder_factory()
                    : std::make_unique<retrieval::HashTrigramEmbedder>();
    index_ = std::make_unique<retrieval::VectorIndex>(embedder_->dimension());
  }

  std::vector<std::string> TableNames() const {
    std::vector<std::string> names;
    if (state_.catalog) {
      for (const auto& t : state_.catalog->tables()) names.push_back(t.name);
    }
    return names;
  }

  void CatchUp() {
    struct stat st;
    if (::fstat(fd_, &st) != 0) FailErrno("stat log");
    if (st.st_size <= offset_) return;
    std::string buf(static_cast<size_t>(st.st_size - offset_), '\0');
    size_t got = 0;
    while (got < buf.size()) {
      ssize_t n = ::pread(fd_, buf.data() + got, buf.size() - got, offset_ + got);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) FailErrno("read log");
      got += static_cast<size_t>(n);
    }
    size_t pos = 0;
    while (true) {
      size_t nl = buf.find('\n', pos);
      if (nl == std::string::npos) break;  // a torn tail line is left for later
      std::string_view line(buf.data() + pos, nl - pos);
      if (!line.empty()) {
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
          Fail(ErrorCode::kIoError, "corrupt log line at byte " + std::to_string(offset_ + pos));
        LogEvent ev = LogEventFromJson(j);
        std::vector<std::string> old_tables = TableNames();
        try {
          Apply(state_, ev);
        } catch (const Error& e) {
          Fail(ErrorCode::kIoError,
               "log event " + std::to_string(ev.seq) + " does not replay: " + e.what());
        }
        Index(ev, old_tables);
      }
      pos = nl + 1;
    }
    offset_ += static_cast<off_t>(pos);
  }

  void Reload() {
    state_ = ProjectState();
    index_.reset();
    offset_ = 0;
    CatchUp();
  }

  void Index(const LogEvent& ev, const std::vector<std::string>& old_tables) {
    EnsureIndex();
    auto mode = state_.project.config.example_embedding;
    if (ev.type == kEvSchemaIngested) {
      for (const auto& name : old_tables) index_->Remove(retrieval::TableEntryId(name));
      retrieval::AddTableSignatures(*index_, *embedder_, *state_.catalog);
    } else if (ev.type == kEvQueryIngested) {
      const AnnotationItem& item = state_.items.back();
      const QueryRecord& q = state_.queries.back();
      if (item.state == ItemState::kAccepted) {
        retrieval::AddExample(*index_, *embedder_,
                              {q.normalized_sql, item.accepted_text, item.item_id}, mode);
      } else if (q.reference_question && !q.reference_question->empty()) {
        retrieval::AddExample(*index_, *embedder_,
                              {q.normalized_sql, *q.reference_question, "ref:" + item.item_id},
                              mode);
      }
    } else if (ev.type == kEvFeedback) {
      const json& fb = ev.data.at("event");
      std::string kind = fb.at("kind").get<std::string>();
      std::string target = fb.at("target_id").get<std::string>();
      if (kind == "accept") {
        const AnnotationItem* item = state_.FindItem(ItemIdOf(target));
        const AnnotationTask* task = item->FindTask(target);
        std::string sql;
        if (task == item) {
          sql = state_.FindQuery(item->query_id)->normalized_sql;
        } else {
          sql = static_cast<const SubItem*>(task)->sql;
        }
        retrieval::AddExample(*index_, *embedder_, {sql, task->accepted_text, target}, mode);
      } else if (kind == "reopen") {
        index_->Remove(retrieval::ExampleEntryId(target));
      }
    }
  }

  const Workspace& ws_;
  fs::path dir_;
  std::mutex mu_;
  int fd_ = -1;
  off_t offset_ = 0;
  ProjectState state_;
  LogEvent last_;
  std::unique_ptr<retrieval::Embedder> embedder_;
  std::unique_ptr<retrieval::VectorIndex> index_;
  std::shared_ptr<generation::CompletionBackend> backend_;
};

Workspace::Workspace(Options options) : options_(std::move(options)) {
  if (options_.root.empty()) options_.root = ".";
  std::error_code ec;
  fs::create_directories(fs::path(options_.root) / "projects", ec);
  if (ec) Fail(ErrorCode::kIoError, "cannot create " + options_.root + ": " + ec.message());
}

Workspace::~Workspace() = default;

int64_t Workspace::Now() const {
  if (options_.clock) return options_.clock();
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string Workspace::ProjectDir(const std::string& project_id) const {
  return (fs::path(options_.root) / "projects" / project_id).string();
}

Workspace::Handle& Workspace::Open(const std::string& project_id) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = handles_.find(project_id);
  if (it != handles_.end()) return *it->second;
  fs::path dir = ProjectDir(project_id);
  if (!IsValidProjectName(project_id) || !fs::exists(dir / kLogFile))
    Fail(ErrorCode::kNotFound, "no project \"" + project_id + "\"");
  auto handle = std::make_unique<Handle>(*this, dir);
  handle->OpenLog(false);
  { Handle::Txn txn(*handle, false); }
  if (handle->state().last_seq == 0)
    Fail(ErrorCode::kIoError, "project \"" + project_id + "\" has an empty log");
  return *handles_.emplace(project_id, std::move(handle)).first->second;
}

Project Workspace::CreateProject(const std::string& name, sql::Dialect dialect,
                                 const ProjectConfig& config) {
  if (!IsValidProjectName(name))
    Fail(ErrorCode::kInvalidArgument,
         "project name must match [A-Za-z0-9][A-Za-z0-9_.-]*: \"" + name + "\"");
  if (config.direction == Direction::kTextToSql)
    Fail(ErrorCode::kNotImplemented, "only the sql_to_nl direction is implemented");
  config.params.Validate();
  const auto& registry = generation::TemplateRegistry::Builtin();
  for (const auto& id : {config.template_id, config.merge_template_id}) {
    if (!registry.Contains(id)) Fail(ErrorCode::kUnknownTemplate, "unknown template " + id);
  }
  if (registry.Get(config.template_id).mode != generation::PromptMode::kDescribe ||
      registry.Get(config.merge_template_id).mode != generation::PromptMode::kMerge)
    Fail(ErrorCode::kInvalidArgument, "template mode does not match its role");

  std::lock_guard<std::mutex> lock(mu_);
  fs::path dir = ProjectDir(name);
  if (handles_.count(name) || fs::exists(dir / kLogFile))
    Fail(ErrorCode::kDuplicateName, "project \"" + name + "\" already exists");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) Fail(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());

  int64_t now = Now();
  Project p;
  p.project_id = name;
  p.name = name;
  p.dialect = dialect;
  p.config = config;
  p.created_at = IsoTime(now);
  auto handle = std::make_unique<Handle>(*this, dir);
  handle->OpenLog(true);
  {
    Handle::Txn txn(*handle, true);
    handle->Commit(kEvProjectCreated, "", {{"project", ToJson(p)}}, now);
  }
  Project out = handle->project();
  handles_.emplace(name, std::move(handle));
  return out;
}

std::vector<Project> Workspace::ListProjects() {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(fs::path(options_.root) / "projects", ec)) {
    if (entry.is_directory() && fs::exists(entry.path() / kLogFile))
      ids.push_back(entry.path().filename().string());
  }
  std::sort(ids.begin(), ids.end());
  std::vector<Project> out;
  for (const auto& id : ids) {
    if (!IsValidProjectName(id)) continue;
    out.push_back(GetProject(id));
  }
  return out;
}

Project Workspace::GetProject(const std::string& project_id) {
  Handle& h = Open(project_id);
  Handle::Txn txn(h, false);
  return h.project();
}

ProjectState Workspace::Snapshot(const std::string& project_id) {
  Handle& h = Open(project_id);
  Handle::Txn txn(h, false);
  return h.state();
}

sql::SchemaCatalog Workspace::IngestSchema(const std::string& project_id, std::string_view text,
                                           sql::SchemaFormat format,
                                           const std::string& schema_id) {
  Handle& h = Open(project_id);
  sql::SchemaCatalog catalog =
      sql::LoadSchema(text, format, schema_id.empty() ? project_id : schema_id);
  Handle::Txn txn(h, true);
  h.Commit(kEvSchemaIngested, "", {{"catalog", catalog.ToJson()}}, Now());
  return *h.state().catalog;
}

IngestReport Workspace::IngestQueries(const std::string& project_id, std::string_view input,
                                      const IngestOptions& options) {
  Handle& h = Open(project_id);
  std::vector<LogEntry> entries = ParseQueryLog(input);
  IngestReport report;
  Handle::Txn txn(h, true);
  int64_t now = Now();
  for (size_t i = 0; i < entries.size(); ++i) {
    const LogEntry& entry = entries[i];
    ++report.statements;
    const ProjectState& st = h.state();
    PreparedQuery prep = PrepareQuery(entry, st.project.dialect,
                                      st.catalog ? &*st.catalog : nullptr);
    if (prep.status == PrepareStatus::kNonSelect) {
      ++report.skipped_non_select;
      continue;
    }
    if (prep.status == PrepareStatus::kParseFailure) {
      ++report.parse_failures;
      prep.failure.index = i;
      report.failures.push_back(prep.failure);
      continue;
    }
    if (st.FindByNormalized(prep.record.normalized_sql)) {
      ++report.skipped_duplicate;
      continue;
    }
    QueryRecord q = std::move(prep.record);
    q.query_id = st.NextQueryId();
    q.source_tag = options.source_tag;
    std::string item_id = (IsValidItemId(entry.id) && !st.FindItem(entry.id))
                              ? entry.id
                              : st.NextItemId();
    json data = {{"query", ToJson(q)}, {"item_id", item_id}};
    if (options.accept_references && entry.question &&
        entry.question->find_first_not_of(" \t\r\n") != std::string::npos) {
      data["accepted"] = {{"text", *entry.question},
                          {"provenance", ToJson(entry.provenance.value_or(Provenance{}))}};
    }
    h.Commit(kEvQueryIngested, "", std::move(data), now);
    ++report.accepted;
    report.item_ids.push_back(item_id);
  }
  return report;
}

namespace {

// Everything a generation call needs, captured under the lock.
struct GenerationJob {
  generation::PromptContext ctx;
  generation::GenerationParams params;
  std::string template_id;
};

std::vector<retrieval::ExamplePair> ExamplesFor(const retrieval::VectorIndex& index,
                                                retrieval::Embedder& embedder,
                                                const AnnotationItem& item,
                                                std::string_view sql, size_t k) {
  if (k == 0) return {};
  // Examples from the item itself (its reference or its own accepted parts)
  // would leak the answer.
  auto hits = retrieval::RetrieveExamples(index, embedder, sql, k + item.sub_items.size() + 2);
  std::vector<retrieval::ExamplePair> out;
  for (auto& ex : hits) {
    if (ex.item_id == "ref:" + item.item_id || ItemIdOf(ex.item_id) == item.item_id) continue;
    out.push_back(std::move(ex));
    if (out.size() == k) break;
  }
  return out;
}

// Fills the display context of |served| for |target_id| and returns the job
// that would generate its candidates.
GenerationJob PrepareTarget(const ProjectState& st, const retrieval::VectorIndex& index,
                            retrieval::Embedder& embedder, const std::string& item_id,
                            const std::string& target_id, ServedItem& served) {
  const ProjectConfig& cfg = st.project.config;
  const AnnotationItem& item = *st.FindItem(item_id);
  const QueryRecord& q = *st.FindQuery(item.query_id);
  const AnnotationTask& task = TaskOrThrow(item, target_id);
  bool parent = &task == &item;
  served.item = item;
  served.target_id = target_id;
  served.target_sql = parent ? q.normalized_sql : static_cast<const SubItem&>(task).sql;
  served.tables.clear();
  if (st.catalog && !st.catalog->empty()) {
    served.tables =
        retrieval::RetrieveSchemaContext(q.normalized_sql, *st.catalog, &index, embedder,
                                         cfg.k_tables)
            .tables;
  }
  served.examples = ExamplesFor(index, embedder, item, served.target_sql, cfg.k_examples);

  GenerationJob job;
  job.params = cfg.params;
  if (parent && item.nested()) {
    std::vector<generation::PartDescription> parts;
    for (const auto& s : item.sub_items) parts.push_back({s.part, s.accepted_text});
    job.ctx = generation::MergeContext(*q.decomposition, parts, q.normalized_sql, served.tables);
    job.template_id = cfg.merge_template_id;
  } else {
    job.ctx.mode = generation::PromptMode::kDescribe;
    job.ctx.target_sql = served.target_sql;
    job.ctx.tables = served.tables;
    job.ctx.examples = served.examples;
    job.template_id = cfg.template_id;
  }
  job.ctx.refinement_notes = task.refinement_notes;
  return job;
}

json CandidatesJson(std::vector<Candidate> candidates, const AnnotationTask& task, int64_t now) {
  json out = json::array();
  size_t next = task.candidates.size() + 1;
  for (auto& c : candidates) {
    c.candidate_id = "c" + std::to_string(next++);
    c.created_at = IsoTime(now);
    out.push_back(generation::ToJson(c));
  }
  return out;
}

void RequireHeldLease(const AnnotationItem& item, const std::string& annotator, int64_t now) {
  if (!item.HasLiveLease(now) || item.lease->annotator_id != annotator)
    Fail(ErrorCode::kLeaseMismatch, "lease on " + item.item_id + " is not held by " + annotator);
}

}  // namespace

ServedItem Workspace::AnnotateNext(const std::string& project_id,
                                   const std::string& annotator_id) {
  if (annotator_id.empty()) Fail(ErrorCode::kInvalidArgument, "annotator id required");
  Handle& h = Open(project_id);
  ServedItem served;
  GenerationJob job;
  bool generate = false;
  std::shared_ptr<generation::CompletionBackend> backend;
  {
    Handle::Txn txn(h, true);
    int64_t now = Now();
    const ProjectState& st = h.state();
    auto open = [](const AnnotationItem& it) {
      return it.state != ItemState::kAccepted && it.state != ItemState::kDiscarded;
    };
    const AnnotationItem* pick = nullptr;
    for (const auto& it : st.items) {
      if (open(it) && it.HasLiveLease(now) && it.lease->annotator_id == annotator_id) {
        pick = &it;
        break;
      }
    }
    if (!pick) {
      for (const auto& it : st.items) {
        if (open(it) && !it.HasLiveLease(now)) {
          pick = &it;
          break;
        }
      }
    }
    if (!pick) Fail(ErrorCode::kQueueEmpty, "no item is available");
    std::string item_id = pick->item_id;
    int64_t expires = now + st.project.config.lease_ttl_seconds;
    h.Commit(kEvLeaseAcquired, annotator_id, {{"item_id", item_id}, {"expires_at", expires}},
             now);
    served.lease_expires_at = expires;
    const AnnotationItem& item = *h.state().FindItem(item_id);
    std::string target = CurrentTarget(item);
    generate = TaskOrThrow(item, target).candidates.empty();
    job = PrepareTarget(h.state(), h.index(), h.embedder(), item_id, target, served);
    if (generate) backend = h.backend();
  }
  if (!generate) return served;

  generation::GenerationResult result;
  try {
    result = generation::GenerateCandidates(job.ctx, job.params, *backend, job.template_id);
  } catch (...) {
    Handle::Txn txn(h, true);
    const AnnotationItem* item = h.state().FindItem(served.item.item_id);
    if (item->lease && item->lease->annotator_id == annotator_id)
      h.Commit(kEvLeaseReleased, annotator_id, {{"item_id", item->item_id}}, Now());
    throw;
  }

  Handle::Txn txn(h, true);
  int64_t now = Now();
  const AnnotationItem* item = h.state().FindItem(served.item.item_id);
  RequireHeldLease(*item, annotator_id, now);
  const AnnotationTask& task = TaskOrThrow(*item, served.target_id);
  if (!task.candidates.empty())
    Fail(ErrorCode::kInvalidTransition, served.target_id + " changed during generation");
  h.Commit(kEvCandidatesGenerated, annotator_id,
           {{"target_id", served.target_id},
            {"candidates", CandidatesJson(std::move(result.candidates), task, now)},
            {"discard_proposed", false}},
           now);
  served.item = *h.state().FindItem(served.item.item_id);
  served.prompt = result.prompt;
  return served;
}

AnnotationItem Workspace::SubmitFeedback(const std::string& project_id,
                                         const std::string& target_id,
                                         const std::string& annotator_id, FeedbackKind kind,
                                         const json& payload) {
  if (kind == FeedbackKind::kAccept) {
    if (!payload.is_object() || !payload.contains("candidate_id") ||
        !payload["candidate_id"].is_string())
      Fail(ErrorCode::kInvalidArgument, "accept needs a candidate_id");
    std::optional<std::string> text;
    if (payload.contains("final_text") && payload["final_text"].is_string())
      text = payload["final_text"].get<std::string>();
    return Accept(project_id, target_id, annotator_id,
                  payload["candidate_id"].get<std::string>(), text);
  }
  if (!payload.is_object() && !payload.is_null())
    Fail(ErrorCode::kInvalidArgument, "payload must be an object");
  Handle& h = Open(project_id);
  std::string item_id = ItemIdOf(target_id);
  GenerationJob job;
  std::shared_ptr<generation::CompletionBackend> backend;
  {
    Handle::Txn txn(h, true);
    int64_t now = Now();
    const AnnotationItem* item = h.state().FindItem(item_id);
    if (!item) Fail(ErrorCode::kNotFound, "unknown item \"" + item_id + "\"");
    const AnnotationTask& task = TaskOrThrow(*item, target_id);
    FeedbackEvent fb;
    fb.event_id = "E" + std::to_string(h.state().last_seq + 1);
    fb.annotator_id = annotator_id;
    fb.kind = kind;
    fb.target_id = target_id;
    fb.payload = payload.is_null() ? json::object() : payload;
    fb.timestamp = IsoTime(now);
    if (kind == FeedbackKind::kEdit) fb.payload["new_candidate_id"] = NextCandidateId(task);
    h.Commit(kEvFeedback, annotator_id,
             {{"event", ToJson(fb)},
              {"lease_expires_at", now + h.project().config.lease_ttl_seconds}},
             now);
    if (kind != FeedbackKind::kRefine) return *h.state().FindItem(item_id);
    ServedItem scratch;
    job = PrepareTarget(h.state(), h.index(), h.embedder(), item_id, target_id, scratch);
    backend = h.backend();
  }

  auto result = generation::GenerateCandidates(job.ctx, job.params, *backend, job.template_id);

  Handle::Txn txn(h, true);
  int64_t now = Now();
  const AnnotationItem* item = h.state().FindItem(item_id);
  RequireHeldLease(*item, annotator_id, now);
  const AnnotationTask& task = TaskOrThrow(*item, target_id);
  h.Commit(kEvCandidatesGenerated, annotator_id,
           {{"target_id", target_id},
            {"candidates", CandidatesJson(std::move(result.candidates), task, now)},
            {"discard_proposed", true}},
           now);
  return *h.state().FindItem(item_id);
}

AnnotationItem Workspace::Accept(const std::string& project_id, const std::string& target_id,
                                 const std::string& annotator_id,
                                 const std::string& candidate_id,
                                 const std::optional<std::string>& final_text) {
  Handle& h = Open(project_id);
  std::string item_id = ItemIdOf(target_id);
  Handle::Txn txn(h, true);
  int64_t now = Now();
  const AnnotationItem* item = h.state().FindItem(item_id);
  if (!item) Fail(ErrorCode::kNotFound, "unknown item \"" + item_id + "\"");
  const AnnotationTask& task = TaskOrThrow(*item, target_id);
  RequireHeldLease(*item, annotator_id, now);
  const Candidate* c = task.FindCandidate(candidate_id);
  if (!c || c->status == generation::CandidateStatus::kDiscarded)
    Fail(ErrorCode::kUnknownCandidate, "unknown or discarded candidate \"" + candidate_id + "\"");
  std::string text = final_text.value_or(c->text);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    Fail(ErrorCode::kInvalidArgument, "final text is blank");
  if (task.state != ItemState::kDrafted && task.state != ItemState::kInReview)
    Fail(ErrorCode::kInvalidTransition,
         target_id + " is " + std::string(ItemStateName(task.state)));
  int64_t expires = now + h.project().config.lease_ttl_seconds;
  auto feedback = [&](FeedbackKind kind, json payload) {
    FeedbackEvent fb;
    fb.event_id = "E" + std::to_string(h.state().last_seq + 1);
    fb.annotator_id = annotator_id;
    fb.kind = kind;
    fb.target_id = target_id;
    fb.payload = std::move(payload);
    fb.timestamp = IsoTime(now);
    h.Commit(kEvFeedback, annotator_id, {{"event", ToJson(fb)}, {"lease_expires_at", expires}},
             now);
  };
  std::string accept_id = candidate_id;
  if (text != c->text) {
    accept_id = NextCandidateId(task);
    feedback(FeedbackKind::kEdit,
             {{"candidate_id", candidate_id}, {"text", text}, {"new_candidate_id", accept_id}});
  }
  feedback(FeedbackKind::kAccept, {{"candidate_id", accept_id}, {"final_text", text}});
  return *h.state().FindItem(item_id);
}

AnnotationItem Workspace::Release(const std::string& project_id, const std::string& item_id,
                                  const std::string& annotator_id) {
  Handle& h = Open(project_id);
  Handle::Txn txn(h, true);
  const AnnotationItem* item = h.state().FindItem(item_id);
  if (!item) Fail(ErrorCode::kNotFound, "unknown item \"" + item_id + "\"");
  if (item->lease)
    h.Commit(kEvLeaseReleased, annotator_id, {{"item_id", item_id}}, Now());
  return *h.state().FindItem(item_id);
}

AnnotationItem Workspace::GetItem(const std::string& project_id, const std::string& item_id) {
  Handle& h = Open(project_id);
  Handle::Txn txn(h, false);
  const AnnotationItem* item = h.state().FindItem(item_id);
  if (!item) Fail(ErrorCode::kNotFound, "unknown item \"" + item_id + "\"");
  return *item;
}

std::vector<AnnotationItem> Workspace::ListItems(const std::string& project_id,
                                                 std::optional<ItemState> state) {
  Handle& h = Open(project_id);
  Handle::Txn txn(h, false);
  std::vector<AnnotationItem> out;
  for (const auto& item : h.state().items) {
    if (!state || item.state == *state) out.push_back(item);
  }
  return out;
}

std::vector<retrieval::ExamplePair> Workspace::RetrieveExamples(const std::string& project_id,
                                                                std::string_view sql, size_t k) {
  Handle& h = Open(project_id);
  { Handle::Txn txn(h, false); }
  return retrieval::RetrieveExamples(h.index(), h.embedder(), sql, k);
}

std::string Workspace::ExportJson(const std::string& project_id) {
  Handle& h = Open(project_id);
  Handle::Txn txn(h, false);
  const ProjectState& st = h.state();
  json out = json::array();
  for (const auto& item : st.items) {
    if (item.state != ItemState::kAccepted) continue;
    const QueryRecord& q = *st.FindQuery(item.query_id);
    Provenance prov;
    if (item.imported) {
      prov = *item.imported;
    } else {
      const Candidate* c = item.AcceptedCandidate();
      prov.model_id = c ? c->model_id : "";
      prov.annotator_id = item.accepted_by;
      prov.feedback_event_count = static_cast<int64_t>(item.feedback_log.size());
    }
    std::string db_id = !q.db_id.empty()                    ? q.db_id
                        : !st.project.schema_id.empty() ? st.project.schema_id
                                                            : st.project.project_id;
    out.push_back({{"id", item.item_id},
                   {"question", item.accepted_text},
                   {"sql", q.normalized_sql},
                   {"db_id", db_id},
                   {"provenance", ToJson(prov)}});
  }
  if (out.empty()) Fail(ErrorCode::kNothingAccepted, "project has no accepted items");
  return out.dump(2) + "\n";
}

ExportSummary Workspace::Export(const std::string& project_id, const std::string& path) {
  std::string text = ExportJson(project_id);
  fs::path dest = path.empty() ? fs::path(ProjectDir(project_id)) / "export.json" : fs::path(path);
  if (dest.has_parent_path()) fs::create_directories(dest.parent_path());
  WriteFileAtomic(dest, text);
  ExportSummary s;
  s.count = json::parse(text).size();
  s.path = dest.string();
  return s;
}

evaluation::RubricJudgment Workspace::OverrideRubric(const std::string& project_id,
                                                     const std::string& item_id,
                                                     const std::string& annotator_id, int level,
                                                     const std::string& rationale) {
  if (annotator_id.empty()) Fail(ErrorCode::kInvalidArgument, "annotator id required");
  evaluation::RubricJudgment j = evaluation::OverrideRubric(level, annotator_id, rationale);
  Handle& h = Open(project_id);
  Handle::Txn txn(h, true);
  h.Commit(kEvRubricOverride, annotator_id,
           {{"item_id", item_id}, {"judgment", evaluation::ToJson(j)}}, Now());
  return h.state().overrides.at(item_id);
}

evaluation::EvalReport Workspace::Evaluate(const std::string& project_id,
                                           const evaluation::Database& db,
                                           const std::string& out_dir) {
  Handle& h = Open(project_id);
  std::vector<evaluation::EvalInput> inputs;
  sql::SchemaCatalog catalog;
  generation::GenerationParams params;
  std::shared_ptr<generation::CompletionBackend> backend;
  {
    Handle::Txn txn(h, false);
    const ProjectState& st = h.state();
    for (const auto& item : st.items) {
      if (item.state != ItemState::kAccepted) continue;
      evaluation::EvalInput in;
      in.item_id = item.item_id;
      in.original_sql = st.FindQuery(item.query_id)->normalized_sql;
      in.nl = item.accepted_text;
      in.reference_question = st.FindQuery(item.query_id)->reference_question;
      auto it = st.overrides.find(item.item_id);
      if (it != st.overrides.end()) in.override_judgment = it->second;
      inputs.push_back(std::move(in));
    }
    if (st.catalog) catalog = *st.catalog;
    params = st.project.config.params;
    backend = h.backend();
  }
  if (inputs.empty()) Fail(ErrorCode::kNoAcceptedItems, "project has no accepted items");
  evaluation::EvalReport report =
      evaluation::EvaluateItems(inputs, catalog, db, *backend, params);
  fs::path dir = out_dir.empty() ? fs::path(ProjectDir(project_id)) : fs::path(out_dir);
  fs::create_directories(dir);
  WriteFileAtomic(dir / kReportJson, evaluation::ToJson(report).dump(2) + "\n");
  WriteFileAtomic(dir / kReportText, evaluation::HistogramText(report));
  if (dir != fs::path(ProjectDir(project_id)))
    WriteFileAtomic(fs::path(ProjectDir(project_id)) / kReportJson,
                    evaluation::ToJson(report).dump(2) + "\n");
  return report;
}

std::optional<evaluation::EvalReport> Workspace::LastReport(const std::string& project_id) {
  ProjectState st = Snapshot(project_id);
  fs::path path = fs::path(ProjectDir(project_id)) / kReportJson;
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  json j = json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) Fail(ErrorCode::kIoError, "corrupt " + path.string());
  evaluation::EvalReport report = evaluation::EvalReportFromJson(j);
  for (auto& r : report.items) {
    auto it = st.overrides.find(r.item_id);
    if (it != st.overrides.end()) r.judgment = it->second;
  }
  evaluation::Summarize(report);
  return report;
}

}  // namespace benchforge::workflow
