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
#include "tests/support/fixtures.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "benchforge/sql/lexer.h"

namespace benchforge::testing {

std::string FixturePath(const std::string& relative) {
  return std::string(BENCHFORGE_FIXTURES_DIR) + "/" + relative;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<CorpusQuery> LoadCorpus(const std::string& path) {
  static const std::regex kMarker(
      R"(^-- name: (\w+) \[(\w+)(?: depth=(\d+))?\] ?(.*)$)");
  std::vector<CorpusQuery> out;
  std::istringstream in(ReadFile(path));
  std::string line;
  CorpusQuery* current = nullptr;
  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_match(line, m, kMarker)) {
      CorpusQuery q;
      q.name = m[1];
      q.klass = m[2];
      if (m[3].matched) q.depth = std::stoi(m[3]);
      q.note = m[4];
      out.push_back(std::move(q));
      current = &out.back();
      continue;
    }
    if (!current || line.rfind("--", 0) == 0) continue;
    current->sql += line;
    current->sql += '\n';
  }
  for (auto& q : out) {
    auto stmts = sql::SplitStatements(q.sql);
    if (stmts.size() != 1)
      throw std::runtime_error("corpus entry " + q.name + " is not one statement");
    q.sql = stmts[0];
  }
  return out;
}

std::vector<CorpusQuery> LoadDefaultCorpus() {
  return LoadCorpus(FixturePath("queries/corpus.sql"));
}

const CorpusQuery& FindQuery(const std::vector<CorpusQuery>& corpus,
                             const std::string& name) {
  for (const auto& q : corpus) {
    if (q.name == name) return q;
  }
  throw std::runtime_error("no corpus query " + name);
}

TempDir::TempDir() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "benchforge-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace benchforge::testing
