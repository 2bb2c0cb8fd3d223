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
#ifndef TESTS_SUPPORT_FIXTURES_H_
#define TESTS_SUPPORT_FIXTURES_H_

#include <optional>
#include <string>
#include <vector>

namespace benchforge::testing {

// Absolute path of a file under the in-repo fixtures/ directory.
std::string FixturePath(const std::string& relative);

std::string ReadFile(const std::string& path);

struct CorpusQuery {
  std::string name;   // F01 ...
  std::string klass;  // flat, nested or correlated
  std::optional<int> depth;
  std::string note;
  std::string sql;
};

// Parses the marker-annotated corpus format of fixtures/queries/*.sql.
std::vector<CorpusQuery> LoadCorpus(const std::string& path);
std::vector<CorpusQuery> LoadDefaultCorpus();

const CorpusQuery& FindQuery(const std::vector<CorpusQuery>& corpus,
                             const std::string& name);

// A scratch directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace benchforge::testing

#endif  // TESTS_SUPPORT_FIXTURES_H_
