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

#include <cctype>
#include <map>
#include <random>
#include <regex>
#include <set>

#include "benchforge/error.h"
#include "benchforge/generation/backend.h"
#include "benchforge/sql/lexer.h"
#include "benchforge/sql/parser.h"
#include "src/generation/phrasing.h"

namespace benchforge::generation {
namespace {

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Fisher-Yates over the raw engine output; distributions are not portable.
std::vector<std::string_view> ShuffledVerbs(std::mt19937_64& rng) {
  std::vector<std::string_view> verbs = phrasing::LeadVerbs();
  for (size_t i = verbs.size(); i > 1; --i) std::swap(verbs[i - 1], verbs[rng() % i]);
  return verbs;
}

std::vector<std::string> SectionLines(const std::string& prompt, const std::string& heading) {
  std::vector<std::string> lines;
  size_t pos = prompt.find("\n\n" + heading + "\n");
  if (pos == std::string::npos) return lines;
  pos += heading.size() + 3;
  while (pos < prompt.size()) {
    size_t end = prompt.find('\n', pos);
    if (end == std::string::npos) end = prompt.size();
    if (end == pos) break;
    lines.push_back(prompt.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

std::vector<sql::TableDef> PromptTables(const std::string& prompt) {
  std::vector<sql::TableDef> tables;
  static const std::regex line(R"(- ([^(]+)\((.*)\))");
  for (const auto& l : SectionLines(prompt, "Tables:")) {
    std::smatch m;
    if (!std::regex_match(l, m, line)) continue;
    sql::TableDef t;
    t.name = m[1];
    std::string cols = m[2];
    size_t start = 0;
    while (start <= cols.size() && !cols.empty()) {
      size_t comma = cols.find(", ", start);
      t.columns.push_back({cols.substr(start, comma - start), "", true});
      if (comma == std::string::npos) break;
      start = comma + 2;
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

std::optional<std::string> FencedSql(const std::string& prompt) {
  size_t open = prompt.rfind("```sql\n");
  if (open == std::string::npos) return std::nullopt;
  open += 7;
  size_t close = prompt.find("\n```", open);
  if (close == std::string::npos) return std::nullopt;
  return prompt.substr(open, close - open);
}

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Sentence as an embeddable clause: no final period, verb lowercased.
std::string Inner(std::string text) {
  text = Trim(text);
  while (!text.empty() && text.back() == '.') text.pop_back();
  if (text.size() > 1 && std::isupper(static_cast<unsigned char>(text[0])) &&
      std::islower(static_cast<unsigned char>(text[1])))
    text[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(text[0])));
  return text;
}

std::string InlineSteps(const std::string& text, const std::map<std::string, std::string>& resolved,
                        std::set<std::string>& used) {
  static const std::regex step(R"(\bstep_[0-9]+\b)");
  std::string out;
  auto last = text.cbegin();
  for (std::sregex_iterator it(text.begin(), text.end(), step), end; it != end; ++it) {
    out.append(last, text.cbegin() + it->position());
    auto found = resolved.find(it->str());
    if (found != resolved.end()) {
      out += "(" + found->second + ")";
      used.insert(found->first);
    } else {
      out += it->str();
    }
    last = text.cbegin() + it->position() + it->length();
  }
  out.append(last, text.cend());
  return out;
}

std::vector<std::string> Describe(const std::string& prompt, int n, std::mt19937_64& rng) {
  std::string body;
  std::optional<std::string> sql = FencedSql(prompt);
  try {
    if (!sql) throw Error(ErrorCode::kInvalidArgument, "no SQL in prompt");
    sql::SqlAst ast = sql::ParseSql(*sql);
    auto exact = phrasing::DescribeExact(ast.root);
    body = exact ? *exact : phrasing::DescribeLoosely(ast.root);
  } catch (const Error&) {
    std::vector<sql::TableDef> tables = PromptTables(prompt);
    body = "the rows the query returns";
    if (!tables.empty()) body += " from " + tables.front().name;
  }
  auto verbs = ShuffledVerbs(rng);
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i)
    out.push_back(std::string(verbs[i % verbs.size()]) + " " + body + ".");
  return out;
}

std::vector<std::string> Merge(const std::string& prompt, int n, std::mt19937_64& rng) {
  std::map<std::string, std::string> resolved;
  std::vector<std::string> step_order;
  std::set<std::string> used;
  std::string final_text;
  for (const auto& line : SectionLines(prompt, "Parts:")) {
    size_t colon = line.find(": ");
    if (colon == std::string::npos) continue;
    std::string name = line.substr(0, colon);
    std::string text = InlineSteps(line.substr(colon + 2), resolved, used);
    if (name == "final") {
      final_text = Inner(text);
    } else {
      resolved[name] = Inner(text);
      step_order.push_back(name);
    }
  }
  static constexpr std::string_view kConnectives[] = {"based on", "using", "drawing on",
                                                      "given"};
  std::optional<std::string_view> body = phrasing::StripLeadVerb(final_text);
  auto verbs = ShuffledVerbs(rng);
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    std::string text;
    if (body) {
      text = std::string(verbs[i % verbs.size()]) + " " + std::string(*body);
    } else {
      text = final_text;
      if (!text.empty())
        text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    }
    for (const auto& name : step_order) {
      if (used.count(name)) continue;
      text += ", " + std::string(kConnectives[i % 4]) + " (" + resolved[name] + ")";
    }
    out.push_back(text + ".");
  }
  return out;
}

std::vector<std::string> Backtranslate(const std::string& prompt, int n) {
  std::string question;
  size_t pos = prompt.find("\n\nQuestion: ");
  if (pos != std::string::npos) {
    pos += 12;
    question = prompt.substr(pos, prompt.find('\n', pos) - pos);
  }
  auto sql = phrasing::ParseSentence(question);
  std::string text = "```sql\n" +
                     (sql ? *sql : phrasing::GuessSql(question, PromptTables(prompt))) +
                     "\n```";
  return std::vector<std::string>(static_cast<size_t>(n), text);
}

}  // namespace

std::vector<std::string> MockBackend::Complete(const std::string& prompt, int n,
                                               const GenerationParams& params) {
  std::mt19937_64 rng(params.seed.value_or(0) ^ Fnv1a(prompt));
  if (prompt.find("\n\nParts:\n") != std::string::npos) return Merge(prompt, n, rng);
  if (prompt.find("\n\nQuestion: ") != std::string::npos) return Backtranslate(prompt, n);
  return Describe(prompt, n, rng);
}

std::string MockBackend::model_id(const GenerationParams&) const { return "mock"; }

}  // namespace benchforge::generation
