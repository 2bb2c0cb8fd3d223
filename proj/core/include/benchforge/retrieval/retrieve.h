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
#ifndef BENCHFORGE_RETRIEVAL_RETRIEVE_H_
#define BENCHFORGE_RETRIEVAL_RETRIEVE_H_

#include <string>
#include <string_view>
#include <vector>

#include "benchforge/retrieval/embedding.h"
#include "benchforge/retrieval/index.h"
#include "benchforge/sql/schema.h"

namespace benchforge::retrieval {

// What an example entry embeds. kSql embeds the canonical SQL alone, which
// puts an accepted item at rank 1 when its own SQL is the query; kSqlAndNl
// appends the accepted description.
enum class ExampleEmbedding { kSql, kSqlAndNl };

std::string_view ExampleEmbeddingName(ExampleEmbedding mode);
ExampleEmbedding ExampleEmbeddingFromName(std::string_view name);

// Canonical rendering when |sql| parses, else the text unchanged.
std::string CanonicalOrRaw(std::string_view sql);

std::string ExampleText(const ExamplePair& example, ExampleEmbedding mode);

// "name(col1, col2, ...)".
std::string TableSignature(const sql::TableDef& table);

std::string ExampleEntryId(const std::string& item_id);
std::string TableEntryId(const std::string& table_name);

// Adds or replaces the example entry for example.item_id.
void AddExample(VectorIndex& index, Embedder& embedder, const ExamplePair& example,
                ExampleEmbedding mode);

// Adds a signature entry for each catalog table not yet indexed.
void AddTableSignatures(VectorIndex& index, Embedder& embedder,
                        const sql::SchemaCatalog& catalog);

// Top-k example pairs for |sql|; empty on a cold start.
std::vector<ExamplePair> RetrieveExamples(const VectorIndex& index, Embedder& embedder,
                                          std::string_view sql, size_t k);

struct SchemaContext {
  std::vector<sql::TableDef> tables;
  bool fallback = false;  // embedding path was used
  std::string reason;     // why the parse path was abandoned
};

// Parse path: the tables referenced by |sql|. When |sql| does not parse,
// references a table missing from |catalog|, or references no table at
// all, falls back to the k_tables catalog tables whose signatures are most
// similar to the raw text. Signature entries come from |index| when it has
// them, else are embedded on the fly. Non-empty whenever |catalog| is.
SchemaContext RetrieveSchemaContext(std::string_view sql,
                                    const sql::SchemaCatalog& catalog,
                                    const VectorIndex* index, Embedder& embedder,
                                    size_t k_tables);

}  // namespace benchforge::retrieval

#endif  // BENCHFORGE_RETRIEVAL_RETRIEVE_H_
