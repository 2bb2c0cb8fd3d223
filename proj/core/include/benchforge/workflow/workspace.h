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

#ifndef BENCHFORGE_WORKFLOW_WORKSPACE_H_
#define BENCHFORGE_WORKFLOW_WORKSPACE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "benchforge/evaluation/database.h"
#include "benchforge/evaluation/report.h"
#include "benchforge/generation/backend.h"
#include "benchforge/retrieval/embedding.h"
#include "benchforge/retrieval/index.h"
#include "benchforge/sql/schema.h"
#include "benchforge/workflow/ingest.h"
#include "benchforge/workflow/state.h"
#include "benchforge/workflow/types.h"

namespace benchforge::workflow {

// What annotate_next hands to an annotator: the leased item, the task to
// work on and the context shown next to it.
struct ServedItem {
  AnnotationItem item;
  std::string target_id;
  std::string target_sql;
  std::vector<sql::TableDef> tables;
  std::vector<retrieval::ExamplePair> examples;
  std::string prompt;  // empty when the candidates already existed
  int64_t lease_expires_at = 0;
};

nlohmann::json ToJson(const ServedItem& s);

struct ExportSummary {
  size_t count = 0;
  std::string path;
};

// Every project lives under <root>/projects/<id>/ as an append-only
// events.jsonl. Commands on one project are serialized by an in-process
// mutex plus an advisory file lock, so a CLI and a server may share a root.
// Generation runs outside both.
class Workspace {
 public:
  using Clock = std::function<int64_t()>;  // unix seconds
  using BackendFactory =
      std::function<std::shared_ptr<generation::CompletionBackend>(const Project&)>;
  using EmbedderFactory = std::function<std::unique_ptr<retrieval::Embedder>()>;

  struct Options {
    std::string root;
    Clock clock;                      // defaults to the system clock
    BackendFactory backend_factory;   // defaults to MakeBackend(config.backend)
    EmbedderFactory embedder_factory; // defaults to HashTrigramEmbedder
    bool fsync = true;
  };

  explicit Workspace(Options options);
  ~Workspace();
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const std::string& root() const { return options_.root; }
  std::string ProjectDir(const std::string& project_id) const;

  // Throws kInvalidArgument for a bad name, kDuplicateName, kNotImplemented
  // for the text_to_sql direction.
  Project CreateProject(const std::string& name, sql::Dialect dialect,
                        const ProjectConfig& config = {});
  std::vector<Project> ListProjects();
  Project GetProject(const std::string& project_id);
  ProjectState Snapshot(const std::string& project_id);

  sql::SchemaCatalog IngestSchema(const std::string& project_id, std::string_view text,
                                  sql::SchemaFormat format = sql::SchemaFormat::kAuto,
                                  const std::string& schema_id = "");
  IngestReport IngestQueries(const std::string& project_id, std::string_view input,
                             const IngestOptions& options = {});

  // Throws kQueueEmpty, kBackendError (lease released).
  ServedItem AnnotateNext(const std::string& project_id, const std::string& annotator_id);

  // Applies one feedback event to |target_id| (item or sub-item). refine
  // regenerates; accept defers to Accept. Returns the updated item.
  AnnotationItem SubmitFeedback(const std::string& project_id, const std::string& target_id,
                                const std::string& annotator_id, FeedbackKind kind,
                                const nlohmann::json& payload = nlohmann::json::object());
  // A final text that differs from the candidate is recorded as an edit
  // first. Without |final_text| the candidate text is used.
  AnnotationItem Accept(const std::string& project_id, const std::string& target_id,
                        const std::string& annotator_id, const std::string& candidate_id,
                        const std::optional<std::string>& final_text = std::nullopt);
  AnnotationItem Release(const std::string& project_id, const std::string& item_id,
                         const std::string& annotator_id);

  AnnotationItem GetItem(const std::string& project_id, const std::string& item_id);
  std::vector<AnnotationItem> ListItems(const std::string& project_id,
                                        std::optional<ItemState> state = std::nullopt);
  std::vector<retrieval::ExamplePair> RetrieveExamples(const std::string& project_id,
                                                       std::string_view sql, size_t k);

  // Export array text. Throws kNothingAccepted.
  std::string ExportJson(const std::string& project_id);
  ExportSummary Export(const std::string& project_id, const std::string& path);

  evaluation::RubricJudgment OverrideRubric(const std::string& project_id,
                                            const std::string& item_id,
                                            const std::string& annotator_id, int level,
                                            const std::string& rationale);
  // Writes eval_report.json and eval_report.txt to |out_dir| (default: the
  // project directory). Throws kNoAcceptedItems.
  evaluation::EvalReport Evaluate(const std::string& project_id, const evaluation::Database& db,
                                  const std::string& out_dir = "");
  // Last report written by Evaluate with overrides applied, if any.
  std::optional<evaluation::EvalReport> LastReport(const std::string& project_id);

 private:
  class Handle;

  Handle& Open(const std::string& project_id);
  int64_t Now() const;

  Options options_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<Handle>> handles_;
};

// Project names double as directory names.
bool IsValidProjectName(std::string_view name);

}  // namespace benchforge::workflow

#endif  // BENCHFORGE_WORKFLOW_WORKSPACE_H_
