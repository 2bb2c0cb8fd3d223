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
#include "benchforge/evaluation/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "benchforge/sql/parser.h"
#include "benchforge/sql/render.h"

namespace benchforge::evaluation {
namespace {

constexpr size_t kMaxPermutations = 5040;

std::string Key(const Value& v) {
  if (std::holds_alternative<std::monostate>(v)) return "N";
  if (const auto* i = std::get_if<int64_t>(&v)) return "I" + std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) {
    double x = *d;
    if (std::isfinite(x) && x == std::trunc(x) && std::fabs(x) < 9.2e18)
      return "I" + std::to_string(static_cast<int64_t>(x));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "R%.10g", x);
    return buf;
  }
  return "S" + std::get<std::string>(v);
}

using Row = std::vector<std::string>;

std::vector<Row> Keys(const ResultTable& t) {
  std::vector<Row> rows;
  rows.reserve(t.rows.size());
  for (const auto& r : t.rows) {
    Row k;
    k.reserve(r.size());
    for (const auto& v : r) k.push_back(Key(v));
    rows.push_back(std::move(k));
  }
  return rows;
}

std::vector<std::string> ColumnSignature(const std::vector<Row>& rows, size_t col) {
  std::vector<std::string> sig;
  sig.reserve(rows.size());
  for (const auto& r : rows) sig.push_back(r[col]);
  std::sort(sig.begin(), sig.end());
  return sig;
}

class PermutationSearch {
 public:
  PermutationSearch(const std::vector<Row>& pred, const std::vector<Row>& gold)
      : pred_(pred), gold_(gold), gold_sorted_(gold) {
    std::sort(gold_sorted_.begin(), gold_sorted_.end());
    size_t n = gold.empty() ? (pred.empty() ? 0 : pred[0].size()) : gold[0].size();
    arity_ = n;
    candidates_.resize(n);
    for (size_t j = 0; j < n; ++j) {
      auto gs = ColumnSignature(gold_, j);
      for (size_t i = 0; i < n; ++i) {
        if (ColumnSignature(pred_, i) == gs) candidates_[j].push_back(i);
      }
    }
  }

  ResultComparison Run() {
    std::vector<size_t> perm;
    std::vector<bool> used(arity_, false);
    Search(perm, used);
    return result_;
  }

 private:
  void Search(std::vector<size_t>& perm, std::vector<bool>& used) {
    if (result_.sequence_equal || tried_ >= kMaxPermutations) return;
    if (perm.size() == arity_) {
      ++tried_;
      Check(perm);
      return;
    }
    size_t j = perm.size();
    for (size_t i : candidates_[j]) {
      if (used[i]) continue;
      used[i] = true;
      perm.push_back(i);
      Search(perm, used);
      perm.pop_back();
      used[i] = false;
    }
  }

  void Check(const std::vector<size_t>& perm) {
    std::vector<Row> permuted;
    permuted.reserve(pred_.size());
    for (const auto& r : pred_) {
      Row p;
      p.reserve(arity_);
      for (size_t j = 0; j < arity_; ++j) p.push_back(r[perm[j]]);
      permuted.push_back(std::move(p));
    }
    bool sequence = permuted == gold_;
    std::sort(permuted.begin(), permuted.end());
    if (permuted != gold_sorted_) return;
    result_.multiset_equal = true;
    result_.sequence_equal = result_.sequence_equal || sequence;
  }

  const std::vector<Row>& pred_;
  const std::vector<Row>& gold_;
  std::vector<Row> gold_sorted_;
  size_t arity_ = 0;
  std::vector<std::vector<size_t>> candidates_;
  size_t tried_ = 0;
  ResultComparison result_;
};

std::string NormalizeWhitespace(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  while (!out.empty() && out.back() == ';') out.pop_back();
  return out;
}

std::string Canonical(std::string_view sql) {
  try {
    return sql::RenderSql(sql::ParseSql(sql));
  } catch (const Error&) {
    return "\x01" + NormalizeWhitespace(sql);
  }
}

using NGramCounts = std::map<std::vector<std::string>, int>;

NGramCounts CountNGrams(const std::vector<std::string>& tokens, size_t n) {
  NGramCounts counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<long>(i),
                                      tokens.begin() + static_cast<long>(i + n))];
  }
  return counts;
}

}  // namespace

ResultComparison CompareResults(const ResultTable& pred, const ResultTable& gold) {
  if (pred.column_names.size() != gold.column_names.size()) return {};
  if (pred.rows.size() != gold.rows.size()) return {};
  if (gold.rows.empty()) return {true, true};
  std::vector<Row> p = Keys(pred);
  std::vector<Row> g = Keys(gold);
  return PermutationSearch(p, g).Run();
}

bool ExecAccuracyMatch(std::string_view pred_sql, std::string_view gold_sql,
                       const Database& db) {
  ResultTable pred, gold;
  try {
    gold = db.Execute(gold_sql);
    pred = db.Execute(pred_sql);
  } catch (const Error&) {
    return false;
  }
  ResultComparison cmp = CompareResults(pred, gold);
  return gold.ordered ? cmp.sequence_equal : cmp.multiset_equal;
}

bool ExactMatch(std::string_view a, std::string_view b) {
  return Canonical(a) == Canonical(b);
}

std::vector<std::string> MetricTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c >= 0x80) {
      current += static_cast<char>(std::tolower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

double Bleu(std::string_view candidate, const std::vector<std::string>& references) {
  std::vector<std::string> cand = MetricTokens(candidate);
  if (cand.empty() || references.empty()) return 0.0;
  std::vector<std::vector<std::string>> refs;
  for (const auto& r : references) refs.push_back(MetricTokens(r));

  double log_sum = 0.0;
  for (size_t n = 1; n <= 4; ++n) {
    NGramCounts counts = CountNGrams(cand, n);
    NGramCounts max_ref;
    for (const auto& ref : refs) {
      for (const auto& [gram, c] : CountNGrams(ref, n)) {
        int& m = max_ref[gram];
        m = std::max(m, c);
      }
    }
    double matched = 0, total = 0;
    for (const auto& [gram, c] : counts) {
      total += c;
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matched += std::min(c, it->second);
    }
    double p = n == 1 ? (total > 0 ? matched / total : 0.0)
                      : (matched + 1.0) / (total + 1.0);
    if (p <= 0.0) return 0.0;
    log_sum += std::log(p) / 4.0;
  }

  double c = static_cast<double>(cand.size());
  double r = static_cast<double>(refs[0].size());
  for (const auto& ref : refs) {
    double len = static_cast<double>(ref.size());
    double d = std::fabs(len - c), best = std::fabs(r - c);
    if (d < best || (d == best && len < r)) r = len;
  }
  double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return std::clamp(bp * std::exp(log_sum), 0.0, 1.0);
}

double RougeL(std::string_view candidate, std::string_view reference) {
  std::vector<std::string> c = MetricTokens(candidate);
  std::vector<std::string> r = MetricTokens(reference);
  if (c.empty() || r.empty()) return 0.0;
  std::vector<size_t> prev(r.size() + 1, 0), cur(r.size() + 1, 0);
  for (size_t i = 1; i <= c.size(); ++i) {
    for (size_t j = 1; j <= r.size(); ++j) {
      cur[j] = c[i - 1] == r[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  double lcs = static_cast<double>(prev[r.size()]);
  if (lcs == 0) return 0.0;
  double p = lcs / static_cast<double>(c.size());
  double rec = lcs / static_cast<double>(r.size());
  return 2 * p * rec / (p + rec);
}

}  // namespace benchforge::evaluation
