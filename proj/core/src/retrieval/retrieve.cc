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
#include "benchforge/retrieval/retrieve.h"

#include "benchforge/error.h"
#include "benchforge/sql/analysis.h"
#include "benchforge/sql/lexer.h"
#include "benchforge/sql/parser.h"
#include "benchforge/sql/render.h"

namespace benchforge::retrieval {

std::string_view ExampleEmbeddingName(ExampleEmbedding mode) {
  return mode == ExampleEmbedding::kSql ? "sql" : "sql+nl";
}

ExampleEmbedding ExampleEmbeddingFromName(std::string_view name) {
  if (name == "sql") return ExampleEmbedding::kSql;
  if (name == "sql+nl") return ExampleEmbedding::kSqlAndNl;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown example embedding \"" + std::string(name) + "\"");
}

std::string CanonicalOrRaw(std::string_view sql) {
  try {
    return sql::RenderSql(sql::ParseSql(sql));
  } catch (const Error&) {
    return std::string(sql);
  }
}

std::string ExampleText(const ExamplePair& example, ExampleEmbedding mode) {
  std::string text = CanonicalOrRaw(example.sql);
  if (mode == ExampleEmbedding::kSqlAndNl) text += "\n" + example.nl;
  return text;
}

std::string TableSignature(const sql::TableDef& table) {
  std::string out = table.name + "(";
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ", ";
    out += table.columns[i].name;
  }
  return out + ")";
}

std::string ExampleEntryId(const std::string& item_id) { return "example:" + item_id; }

std::string TableEntryId(const std::string& table_name) {
  return "table:" + sql::ToLower(table_name);
}

void AddExample(VectorIndex& index, Embedder& embedder, const ExamplePair& example,
                ExampleEmbedding mode) {
  std::string text = ExampleText(example, mode);
  EmbeddingVector v = embedder.Embed(text);
  std::string id = ExampleEntryId(example.item_id);
  index.Remove(id);
  index.Add(id, EntryKind::kExample, std::move(text), example, std::move(v));
}

void AddTableSignatures(VectorIndex& index, Embedder& embedder,
                        const sql::SchemaCatalog& catalog) {
  for (const auto& table : catalog.tables()) {
    std::string id = TableEntryId(table.name);
    if (index.Contains(id)) continue;
    std::string text = TableSignature(table);
    EmbeddingVector v = embedder.Embed(text);
    index.Add(id, EntryKind::kTableSignature, std::move(text), table, std::move(v));
  }
}

std::vector<ExamplePair> RetrieveExamples(const VectorIndex& index, Embedder& embedder,
                                          std::string_view sql, size_t k) {
  std::vector<ExamplePair> out;
  if (index.size(EntryKind::kExample) == 0) return out;
  EmbeddingVector q = embedder.Embed(CanonicalOrRaw(sql));
  for (auto& hit : index.TopK(q, k, EntryKind::kExample))
    out.push_back(std::get<ExamplePair>(std::move(hit.entry.payload)));
  return out;
}

SchemaContext RetrieveSchemaContext(std::string_view sql,
                                    const sql::SchemaCatalog& catalog,
                                    const VectorIndex* index, Embedder& embedder,
                                    size_t k_tables) {
  SchemaContext ctx;
  try {
    ctx.tables = sql::ExtractTables(sql::ParseSql(sql), catalog);
    if (!ctx.tables.empty() || catalog.empty()) return ctx;
    ctx.reason = "query references no catalog table";
  } catch (const Error& e) {
    ctx.reason = e.what();
  }
  ctx.tables.clear();
  ctx.fallback = true;
  if (catalog.empty() || k_tables == 0) return ctx;

  EmbeddingVector q = embedder.Embed(sql);
  bool indexed = index && index->size(EntryKind::kTableSignature) > 0;
  for (const auto& table : catalog.tables())
    indexed = indexed && index->Contains(TableEntryId(table.name));
  if (indexed) {
    for (auto& hit : index->TopK(q, k_tables, EntryKind::kTableSignature))
      ctx.tables.push_back(std::get<sql::TableDef>(std::move(hit.entry.payload)));
    return ctx;
  }
  VectorIndex scratch(embedder.dimension());
  AddTableSignatures(scratch, embedder, catalog);
  for (auto& hit : scratch.TopK(q, k_tables, EntryKind::kTableSignature))
    ctx.tables.push_back(std::get<sql::TableDef>(std::move(hit.entry.payload)));
  return ctx;
}

}  // namespace benchforge::retrieval
