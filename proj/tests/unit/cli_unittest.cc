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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli/cli.h"
#include "tests/support/fixtures.h"

namespace benchforge::cli {
namespace {

using benchforge::testing::FixturePath;
using benchforge::testing::ReadFile;
using benchforge::testing::TempDir;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  Result Cli(std::vector<std::string> args) {
    args.insert(args.begin(), {"--root", dir_.path() + "/ws"});
    std::ostringstream out, err;
    int code = cli::Run(args, out, err);
    return {code, out.str(), err.str()};
  }
  std::string Path(const std::string& name) { return dir_.path() + "/" + name; }

  TempDir dir_;
};

TEST_F(CliTest, UsageErrorsExitTwo) {
  auto r = Cli({});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("Usage:"), std::string::npos);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Cli({"init"}).code, kExitUsage);
  EXPECT_EQ(Cli({"eval"}).code, kExitUsage);
  // No project yet and none named.
  EXPECT_EQ(Cli({"export"}).code, kExitUsage);
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
}

TEST_F(CliTest, ExportOfEmptyProjectIsDomainError) {
  ASSERT_EQ(Cli({"init", "empty"}).code, kExitOk);
  auto r = Cli({"--json", "export"});
  EXPECT_EQ(r.code, kExitDomainError);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["code"], "NothingAccepted");
  EXPECT_FALSE(j["message"].get<std::string>().empty());

  r = Cli({"export"});
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_NE(r.err.find("NothingAccepted"), std::string::npos);
}

TEST_F(CliTest, InitErrors) {
  ASSERT_EQ(Cli({"init", "p"}).code, kExitOk);
  auto r = Cli({"--json", "init", "p"});
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_EQ(json::parse(r.out)["code"], "DuplicateName");
  EXPECT_EQ(json::parse(Cli({"--json", "init", "../x"}).out)["code"], "InvalidArgument");
  EXPECT_EQ(json::parse(Cli({"--json", "init", "q", "--dialect", "oracle"}).out)["code"],
            "InvalidArgument");
  EXPECT_EQ(json::parse(Cli({"--json", "init", "t", "--direction", "text_to_sql"}).out)["code"],
            "NotImplemented");
}

TEST_F(CliTest, EndToEndRoundTrip) {
  ASSERT_EQ(Cli({"init", "uni", "--dialect", "sqlite"}).code, kExitOk);
  auto r = Cli({"--json", "ingest", "--schema", FixturePath("db/schema.sql"), "--queries",
                FixturePath("invertible/queries.sql")});
  ASSERT_EQ(r.code, kExitOk) << r.out << r.err;
  auto ingest = json::parse(r.out);
  EXPECT_EQ(ingest["schema"]["tables"].size(), 6u);
  size_t n = ingest["queries"]["accepted"].get<size_t>();
  EXPECT_GE(n, 10u);

  r = Cli({"--json", "annotate", "--auto-accept-rank1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("not human-verified"), std::string::npos);
  EXPECT_GE(json::parse(r.out)["accepted"].get<size_t>(), n);

  ASSERT_EQ(Cli({"export", "--out", Path("a.json")}).code, kExitOk);
  r = Cli({"--json", "eval", "--db", FixturePath("db"), "--out", Path("rep/eval.json")});
  ASSERT_EQ(r.code, kExitOk) << r.out << r.err;
  auto report = json::parse(ReadFile(Path("rep/eval.json")));
  EXPECT_EQ(json::parse(r.out), report);
  EXPECT_DOUBLE_EQ(report["aggregates"]["execution_accuracy"].get<double>(), 1.0);
  EXPECT_EQ(report["items"].size(), n);
  for (const auto& item : report["items"]) EXPECT_EQ(item["judgment"]["level"], 5);
  EXPECT_TRUE(std::filesystem::exists(Path("rep/eval.txt")));
  EXPECT_EQ(Cli({"--json", "report"}).out, r.out);

  ASSERT_EQ(Cli({"init", "copy"}).code, kExitOk);
  ASSERT_EQ(Cli({"ingest", "--schema", FixturePath("db/schema.sql"), "--queries", Path("a.json"),
                 "--accept-references"})
                .code,
            kExitOk);
  ASSERT_EQ(Cli({"export", "--out", Path("b.json")}).code, kExitOk);
  EXPECT_EQ(ReadFile(Path("a.json")), ReadFile(Path("b.json")));
}

TEST_F(CliTest, ManualFeedbackLoop) {
  ASSERT_EQ(Cli({"init", "m", "--n-candidates", "3", "--seed", "7"}).code, kExitOk);
  ASSERT_EQ(Cli({"ingest", "--schema", FixturePath("db/schema.sql")}).code, kExitOk);
  std::string q = Path("q.sql");
  {
    std::ofstream(q) << "SELECT name FROM students WHERE gpa > 3.5;\n";
  }
  ASSERT_EQ(Cli({"ingest", "--queries", q, "--source-tag", "logs"}).code, kExitOk);

  auto r = Cli({"--json", "--annotator", "ann", "annotate"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto served = json::parse(r.out);
  std::string target = served["target_id"];
  EXPECT_EQ(served["item"]["candidates"].size(), 3u);

  // Another annotator cannot touch the leased item.
  r = Cli({"--json", "--annotator", "other", "feedback", "rank", target, "--order", "c2,c1,c3"});
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_EQ(json::parse(r.out)["code"], "LeaseMismatch");

  r = Cli({"--json", "--annotator", "ann", "feedback", "rank", target, "--order", "c2,c1,c3"});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(json::parse(r.out)["state"], "in_review");

  r = Cli({"--json", "--annotator", "ann", "feedback", "accept", target, "--candidate", "c2",
           "--final-text", "Names of students with a GPA above 3.5."});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  auto item = json::parse(r.out);
  EXPECT_EQ(item["state"], "accepted");
  EXPECT_EQ(item["accepted_text"], "Names of students with a GPA above 3.5.");

  r = Cli({"--json", "items", "--state", "accepted"});
  EXPECT_EQ(json::parse(r.out).size(), 1u);
  EXPECT_EQ(Cli({"items", "--state", "bogus"}).code, kExitUsage);
  EXPECT_EQ(Cli({"feedback", "bogus", target}).code, kExitUsage);
}

TEST_F(CliTest, ConfigFileSuppliesDefaults) {
  std::string cfg = Path("cfg.json");
  {
    std::ofstream(cfg) << json{{"root", Path("other")},
                               {"project_config", {{"params", {{"n_candidates", 2}}}}}}
                              .dump();
  }
  std::ostringstream out, err;
  ASSERT_EQ(cli::Run({"--config", cfg, "--json", "init", "c"}, out, err), kExitOk) << err.str();
  auto project = json::parse(out.str());
  EXPECT_EQ(project["config"]["params"]["n_candidates"], 2);
  EXPECT_TRUE(std::filesystem::exists(Path("other/projects/c")));

  std::string bad = Path("bad.json");
  {
    std::ofstream(bad) << "[1,";
  }
  std::ostringstream out2, err2;
  EXPECT_EQ(cli::Run({"--config", bad, "projects"}, out2, err2), kExitDomainError);
}

TEST_F(CliTest, EveryJsonOutputParses) {
  std::string log = Path("log.sql");
  {
    std::ofstream(log) << "SELECT name FROM students;\n"
                          "SELECT title FROM courses WHERE credits > 3;\n"
                          "SELECT COUNT(*) FROM enrollments;\n";
  }
  auto parses = [&](std::vector<std::string> args) {
    args.insert(args.begin(), "--json");
    auto r = Cli(args);
    EXPECT_EQ(r.code, kExitOk) << args[1] << ": " << r.out << r.err;
    return json::parse(r.out);
  };
  EXPECT_EQ(parses({"init", "demo"})["project_id"], "demo");
  auto report = parses({"ingest", "--schema", FixturePath("db/schema.sql"), "--queries", log});
  EXPECT_EQ(report["queries"]["statements"], 3);
  EXPECT_EQ(report["queries"]["accepted"], 3);
  auto served = parses({"annotate"});
  std::string item = served["item"]["item_id"];
  parses({"feedback", "flag", item, "--note", "check join"});
  parses({"release", item});
  EXPECT_EQ(parses({"items"}).size(), 3u);
  EXPECT_EQ(parses({"projects"}).size(), 1u);
  EXPECT_EQ(parses({"annotate", "--auto-accept-rank1"})["accepted"], 3);
  EXPECT_EQ(parses({"export"})["count"], 3);
  parses({"eval", "--db", FixturePath("db")});
  parses({"report"});
}

TEST_F(CliTest, ServeNeedsToken) {
  ::unsetenv("BENCHFORGE_TOKEN");
  auto r = Cli({"--json", "serve", "--port", "0"});
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_EQ(json::parse(r.out)["code"], "InvalidArgument");
}

}  // namespace
}  // namespace benchforge::cli
