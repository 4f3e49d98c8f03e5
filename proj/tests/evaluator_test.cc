// Copyright 2026 The SolBugSmith Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "solbugsmith/error.h"
#include "solbugsmith/evaluator.h"
#include "test_util.h"

namespace solbugsmith {
namespace {

BugLogEntry Entry(const std::string& file, BugType type, int start, int end) {
  BugLogEntry e;
  e.bug_id = file + ":" + std::to_string(start);
  e.bug_type = type;
  e.file = file;
  e.start_line = start;
  e.end_line = end;
  return e;
}

Finding At(const std::string& tool, const std::string& file, int line,
           std::optional<BugType> type) {
  Finding f;
  f.tool = tool;
  f.file = file;
  f.line = line;
  f.type = type;
  return f;
}

// Maximum bipartite matching by augmenting paths.
int MaxMatching(const std::vector<std::vector<int>>& adj, int right) {
  std::vector<int> owner(static_cast<std::size_t>(right), -1);
  int matched = 0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    std::vector<bool> seen(static_cast<std::size_t>(right), false);
    std::function<bool(int)> augment = [&](int x) {
      for (int v : adj[static_cast<std::size_t>(x)]) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        seen[static_cast<std::size_t>(v)] = true;
        if (owner[static_cast<std::size_t>(v)] < 0 ||
            augment(owner[static_cast<std::size_t>(v)])) {
          owner[static_cast<std::size_t>(v)] = x;
          return true;
        }
      }
      return false;
    };
    if (augment(static_cast<int>(u))) ++matched;
  }
  return matched;
}

TEST_CASE("false positive extrapolation") {
  CHECK(EstimateFalsePositives(40, 20, 16) == 32);
  CHECK(EstimateFalsePositives(40, 20, 0) == 0);
  CHECK(EstimateFalsePositives(7, 7, 7) == 7);
  CHECK(EstimateFalsePositives(0, 0, 0) == 0);
  // 1.5 rounds up, 0.5 rounds up, 2.4 rounds down.
  CHECK(EstimateFalsePositives(3, 2, 1) == 2);
  CHECK(EstimateFalsePositives(1, 1, 0) == 0);
  CHECK(EstimateFalsePositives(25, 20, 1) == 1);
  CHECK(EstimateFalsePositives(47, 20, 1) == 2);
  CHECK(EstimateFalsePositives(2'000'000'000, 20, 20) == 2'000'000'000);
  CHECK_THROWS_AS(EstimateFalsePositives(10, 11, 0), DomainError);
  CHECK_THROWS_AS(EstimateFalsePositives(10, 5, 6), DomainError);
  CHECK_THROWS_AS(EstimateFalsePositives(10, 5, -1), DomainError);
}

TEST_CASE("normalized reports") {
  CHECK(IngestReport("", ReportAdapter::kNormalizedJson).empty());
  CHECK(IngestReport("[]", ReportAdapter::kNormalizedJson).empty());
  std::vector<Finding> one = IngestReport(
      R"([{"tool":"Mythril","file":"a.sol","line":186,"type":"Reentrancy",)"
      R"("message":"external call"}])",
      ReportAdapter::kNormalizedJson);
  REQUIRE(one.size() == 1);
  CHECK(one[0].tool == "Mythril");
  CHECK(one[0].line == 186);
  CHECK(one[0].type == BugType::kReentrancy);
  CHECK(one[0].message == "external call");

  std::vector<Finding> misc = IngestReport(
      R"([{"tool":"t","file":"a.sol","line":3,"type":"assembly-usage"}])",
      ReportAdapter::kNormalizedJson);
  REQUIRE(misc.size() == 1);
  CHECK_FALSE(misc[0].type.has_value());
  CHECK_FALSE(misc[0].message.has_value());

  const std::string bad =
      "[\n  {\"tool\":\"t\",\"file\":\"a\",\"line\":1,\"type\":\"TOD\"},\n"
      "  {\"tool\":\"t\",\"file\":\"a\",\"line\":0,\"type\":\"TOD\"}\n]";
  try {
    IngestReport(bad, ReportAdapter::kNormalizedJson);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 3);
  }
  try {
    IngestReport("[\n{\"tool\":", ReportAdapter::kNormalizedJson);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(IngestReport("{}", ReportAdapter::kNormalizedJson), FormatError);
  CHECK_THROWS_AS(IngestReport(R"([{"tool":"t","line":1,"type":"TOD"}])",
                               ReportAdapter::kNormalizedJson),
                  FormatError);
  CHECK_THROWS_AS(IngestReport(R"([{"tool":"t","file":"a","line":1,"type":"TOD"}])",
                               ReportAdapter::kSyntheticOracle),
                  FormatError);

  std::vector<Finding> planted = {At("o", "a.sol", 4, BugType::kTOD),
                                  At("o", "b.sol", 9, std::nullopt)};
  planted[0].planted = Planted::kCorrect;
  planted[1].planted = Planted::kExtra;
  planted[1].message = "x, \"y\"";
  CHECK(IngestReport(EmitReport(planted, ReportAdapter::kSyntheticOracle),
                     ReportAdapter::kSyntheticOracle) == planted);
  CHECK(EmitReport({}, ReportAdapter::kNormalizedJson) == "[]\n");
  CHECK(ParseAdapter("normalized-json") == ReportAdapter::kNormalizedJson);
  CHECK(ParseAdapter("synthetic-oracle") == ReportAdapter::kSyntheticOracle);
  CHECK_FALSE(ParseAdapter("slither-json").has_value());
}

TEST_CASE("false negatives: simple cases") {
  BugLog log;
  std::vector<Finding> perfect;
  for (int i = 0; i < 10; ++i) {
    log.push_back(Entry("a.sol", BugType::kTOD, 10 * i + 1, 10 * i + 3));
    perfect.push_back(At("t", "a.sol", 10 * i + 2, BugType::kTOD));
  }
  std::vector<FNResult> r = ScoreFalseNegatives(log, perfect, {}, "t");
  REQUIRE(r.size() == 1);
  CHECK(r[0] == FNResult{"t", BugType::kTOD, 10, 10, 0, 0});

  r = ScoreFalseNegatives(log, {}, {}, "t");
  CHECK(r[0] == FNResult{"t", BugType::kTOD, 10, 0, 0, 10});

  // A mistyped report on the bug's lines is not "unreported".
  BugLog re = {Entry("a.sol", BugType::kReentrancy, 185, 188)};
  r = ScoreFalseNegatives(
      re, {At("Mythril", "a.sol", 186, BugType::kUnhandledException)});
  CHECK(r[0].misidentified_type == 1);
  CHECK(r[0].unreported == 0);
  // Miscellaneous counts as a wrong type too.
  r = ScoreFalseNegatives(re, {At("Mythril", "a.sol", 186, std::nullopt)});
  CHECK(r[0].misidentified_type == 1);

  // Lines outside the span, or another file, do not match.
  r = ScoreFalseNegatives(re, {At("t", "a.sol", 189, BugType::kReentrancy),
                               At("t", "b.sol", 186, BugType::kReentrancy)});
  CHECK(r[0].unreported == 1);
  MatchPolicy slack{1};
  r = ScoreFalseNegatives(re, {At("t", "a.sol", 189, BugType::kReentrancy)}, slack);
  CHECK(r[0].correctly_detected == 1);

  // One finding cannot explain two bugs.
  BugLog two = {Entry("a.sol", BugType::kTOD, 5, 5), Entry("a.sol", BugType::kTOD, 5, 6)};
  r = ScoreFalseNegatives(two, {At("t", "a.sol", 5, BugType::kTOD)});
  CHECK(r[0] == FNResult{"", BugType::kTOD, 2, 1, 0, 1});
  // A right-typed finding goes to the right-typed bug.
  BugLog mixed = {Entry("a.sol", BugType::kTOD, 5, 5),
                  Entry("a.sol", BugType::kTxOrigin, 5, 5)};
  r = ScoreFalseNegatives(mixed, {At("t", "a.sol", 5, BugType::kTxOrigin),
                                  At("t", "a.sol", 5, BugType::kReentrancy)});
  REQUIRE(r.size() == 2);
  CHECK(r[0] == FNResult{"", BugType::kTOD, 1, 0, 1, 0});
  CHECK(r[1] == FNResult{"", BugType::kTxOrigin, 1, 1, 0, 0});
}

TEST_CASE("false negatives: greedy matching is maximal") {
  std::mt19937 rng(11);
  for (int round = 0; round < 300; ++round) {
    BugLog log;
    std::vector<Finding> findings;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      int s = 1 + static_cast<int>(rng() % 12);
      log.push_back(Entry("a.sol", kAllBugTypes[rng() % 2], s,
                          s + static_cast<int>(rng() % 4)));
    }
    const int m = static_cast<int>(rng() % 10);
    for (int i = 0; i < m; ++i) {
      findings.push_back(At("t", "a.sol", 1 + static_cast<int>(rng() % 16),
                            kAllBugTypes[rng() % 3]));
    }
    std::vector<FNResult> r = ScoreFalseNegatives(log, findings);
    int correct = 0, injected = 0, unreported = 0;
    for (const FNResult& x : r) {
      CHECK(x.correctly_detected + x.misidentified_type + x.unreported == x.injected);
      correct += x.correctly_detected;
      injected += x.injected;
      unreported += x.unreported;
    }
    CHECK(injected == n);
    std::vector<std::vector<int>> typed(log.size()), any(log.size());
    for (std::size_t e = 0; e < log.size(); ++e) {
      for (std::size_t f = 0; f < findings.size(); ++f) {
        const bool on_line = log[e].start_line <= findings[f].line &&
                             findings[f].line <= log[e].end_line;
        if (!on_line) continue;
        any[e].push_back(static_cast<int>(f));
        if (findings[f].type == log[e].bug_type) typed[e].push_back(static_cast<int>(f));
      }
    }
    CHECK(correct == MaxMatching(typed, m));
    CHECK(injected - unreported <= MaxMatching(any, m));

    // Adding a finding never increases unreported.
    findings.push_back(At("t", "a.sol", 1 + static_cast<int>(rng() % 16),
                          kAllBugTypes[rng() % 3]));
    int after = 0;
    for (const FNResult& x : ScoreFalseNegatives(log, findings)) after += x.unreported;
    CHECK(after <= unreported);
  }
}

TEST_CASE("false negatives: planted miss rate is recovered") {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution miss(0.3);
  BugLog log;
  std::vector<Finding> findings;
  int planted = 0;
  for (int i = 0; i < 20000; ++i) {
    log.push_back(Entry("a.sol", BugType::kReentrancy, 3 * i + 1, 3 * i + 2));
    if (miss(rng)) {
      ++planted;
    } else {
      findings.push_back(At("t", "a.sol", 3 * i + 1, BugType::kReentrancy));
    }
  }
  std::vector<FNResult> r = ScoreFalseNegatives(log, findings);
  CHECK(r[0].unreported == planted);
  CHECK(std::abs(r[0].unreported / 20000.0 - 0.3) < 0.02);
}

TEST_CASE("capability scoping") {
  std::vector<ToolCapabilities> caps = DefaultCapabilities();
  REQUIRE(caps.size() == 6);
  CHECK(caps[0].tool == "Oyente");
  CHECK(caps[5].tool == "Slither");
  const ToolCapabilities* securify = FindTool(caps, "Securify");
  REQUIRE(securify != nullptr);
  CHECK_FALSE(securify->detects.count(BugType::kTimestampDependency));
  CHECK(FindTool(caps, "Nope") == nullptr);

  BugLog log = {Entry("a", BugType::kTimestampDependency, 1, 1),
                Entry("a", BugType::kTOD, 2, 2)};
  BugLog scoped = RestrictToScope(log, *securify);
  REQUIRE(scoped.size() == 1);
  CHECK(scoped[0].bug_type == BugType::kTOD);
  ToolCapabilities all{"all", {kAllBugTypes.begin(), kAllBugTypes.end()}};
  CHECK(RestrictToScope(log, all) == log);
  CHECK_THROWS_AS(RestrictToScope(log, ToolCapabilities{"none", {}}), ScopeError);

  std::vector<InjectionProfile> profiles(2);
  profiles[0].bug_type = BugType::kTimestampDependency;
  profiles[1].bug_type = BugType::kUncheckedSend;
  std::vector<InjectionProfile> kept = RestrictToScope(profiles, *securify);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].bug_type == BugType::kUncheckedSend);

  // Bundled data files agree with the built-in defaults.
  std::vector<ToolCapabilities> file = LoadCapabilities(
      testing::ReadFile(testing::SourceDir() / "data" / "capabilities.json"));
  REQUIRE(file.size() == caps.size());
  for (std::size_t i = 0; i < caps.size(); ++i) {
    CHECK(file[i].tool == caps[i].tool);
    CHECK(file[i].detects == caps[i].detects);
  }
  CHECK(LoadThresholds(testing::ReadFile(testing::SourceDir() / "data" /
                                         "thresholds.json")) == DefaultThresholds());
  CHECK_THROWS_AS(LoadCapabilities(R"({"t":["Bogus"]})"), FormatError);
  CHECK_THROWS_AS(LoadThresholds(R"({"TOD":0})"), FormatError);
}

TEST_CASE("majority thresholds") {
  const Thresholds t = DefaultThresholds();
  CHECK(t.at(BugType::kReentrancy) == 4);
  CHECK(t.at(BugType::kTimestampDependency) == 3);
  CHECK(t.at(BugType::kUncheckedSend) == 2);
  CHECK(t.at(BugType::kUnhandledException) == 3);
  CHECK(t.at(BugType::kTOD) == 2);
  CHECK(t.at(BugType::kIntegerOverflowUnderflow) == 3);
  CHECK(t.at(BugType::kTxOrigin) == 2);
  // Each is a simple majority of the tools that can detect the type.
  CHECK(MajorityThresholds(DefaultCapabilities()) == t);
}

TEST_CASE("majority filter boundary") {
  const Thresholds thresholds = DefaultThresholds();
  for (const auto& [type, threshold] : thresholds) {
    CAPTURE(BugTypeName(type));
    std::map<std::string, std::vector<Finding>> by_tool;
    for (int i = 0; i < threshold; ++i) {
      const std::string tool = "t" + std::to_string(i);
      // Line 10: threshold tools. Line 20: one fewer.
      by_tool[tool].push_back(At(tool, "a.sol", 10, type));
      if (i + 1 < threshold) by_tool[tool].push_back(At(tool, "a.sol", 20, type));
    }
    auto out = FilterByMajority(by_tool, {}, thresholds);
    for (const auto& [tool, o] : out) {
      CHECK(o.candidates.size() == by_tool[tool].size());
      REQUIRE(o.excluded.size() == 1);
      CHECK(o.excluded[0].line == 10);
      if (by_tool[tool].size() == 2) {
        REQUIRE(o.filtered.size() == 1);
        CHECK(o.filtered[0].line == 20);
      } else {
        CHECK(o.filtered.empty());
      }
    }
  }
}

TEST_CASE("majority filter details") {
  const Thresholds thresholds = DefaultThresholds();
  std::map<std::string, std::vector<Finding>> by_tool;
  by_tool["a"] = {At("a", "x.sol", 5, BugType::kTOD),
                  At("a", "x.sol", 50, BugType::kTOD),
                  At("a", "x.sol", 7, std::nullopt)};
  by_tool["b"] = {At("b", "x.sol", 5, BugType::kTxOrigin),
                  At("b", "y.sol", 50, BugType::kTOD),
                  At("b", "x.sol", 51, BugType::kTOD)};
  BugLog log = {Entry("x.sol", BugType::kTOD, 49, 50)};
  auto out = FilterByMajority(by_tool, log, thresholds);
  // Alone at (x.sol, 5, TOD): same line but other type or file do not count.
  CHECK(out["a"].candidates.size() == 1);
  CHECK(out["a"].filtered.size() == 1);
  CHECK(out["a"].miscellaneous == 1);
  CHECK(out["b"].filtered.size() == 3);

  // With slack the neighbouring line agrees; the injected range grows too.
  by_tool["b"].push_back(At("b", "x.sol", 6, BugType::kTOD));
  out = FilterByMajority(by_tool, log, thresholds, MatchPolicy{1});
  CHECK(out["a"].excluded.size() == 1);
  CHECK(out["b"].candidates.size() == 3);

  // Raising a threshold never shrinks the filtered set.
  Thresholds strict = thresholds;
  strict[BugType::kTOD] = 3;
  auto relaxed = FilterByMajority(by_tool, log, strict, MatchPolicy{1});
  for (const auto& [tool, o] : out) {
    CHECK(relaxed[tool].filtered.size() >= o.filtered.size());
  }

  Thresholds partial = {{BugType::kTOD, 2}};
  CHECK_THROWS_AS(FilterByMajority(by_tool, log, partial), MissingThreshold);
}

TEST_CASE("inspection sample") {
  std::vector<Finding> forty;
  for (int i = 1; i <= 40; ++i) forty.push_back(At("t", "a.sol", i, BugType::kTOD));
  std::vector<Finding> s = SampleForInspection(forty, 20, 9);
  REQUIRE(s.size() == 20);
  std::set<int> lines;
  for (const Finding& f : s) lines.insert(f.line);
  CHECK(lines.size() == 20);
  CHECK(SampleForInspection(forty, 20, 9) == s);
  CHECK(SampleForInspection(forty, 20, 10) != s);
  std::vector<Finding> five(forty.begin(), forty.begin() + 5);
  CHECK(SampleForInspection(five, 20, 9) == five);

  // Each item is about equally likely to be chosen.
  std::vector<int> hits(40, 0);
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    for (const Finding& f : SampleForInspection(forty, 20, seed)) {
      ++hits[static_cast<std::size_t>(f.line - 1)];
    }
  }
  for (int h : hits) CHECK(std::abs(h - 2000) < 200);
}

TEST_CASE("rendered tables") {
  CHECK(FNCell(nullptr, false) == "NA");
  FNResult smartcheck{"SmartCheck", BugType::kReentrancy, 1343, 0, 1237, 106};
  CHECK(FNCell(&smartcheck, true) == "1343 (106)");
  FNResult mythril{"Mythril", BugType::kReentrancy, 1343, 258, 280, 805};
  CHECK(FNCell(&mythril, true) == "1085 (805)");
  FNResult perfect{"Slither", BugType::kReentrancy, 1343, 1343, 0, 0};
  CHECK(FNCell(&perfect, true) == "✓");

  EvaluationResult r;
  r.tools = DefaultCapabilities();
  r.thresholds = DefaultThresholds();
  r.fn = {smartcheck, mythril, perfect};
  r.fp = {FPResult{"Mythril", BugType::kReentrancy, 100, 60, 40, 20, 16, 32},
          FPResult{"Slither", BugType::kReentrancy, 0, 0, 0, 0, 0, 0}};
  r.miscellaneous["Mythril"] = 144;
  ReportDocument doc = RenderTables(r);
  CHECK(doc.fn_markdown.find("| Reentrancy | 1343 |") != std::string::npos);
  CHECK(doc.fn_markdown.find("| 1085 (805) | 1343 (106) |") != std::string::npos);
  CHECK(doc.fn_markdown.find("| ✓ |") != std::string::npos);
  // Securify cannot detect timestamp dependency.
  CHECK(doc.fn_markdown.find("| TimestampDependency | 0 | - | NA |") !=
        std::string::npos);
  CHECK(doc.fp_markdown.find("| 100 | 40 | 32 |") != std::string::npos);
  CHECK(doc.fp_markdown.find("| 0 | 0 | - |") != std::string::npos);
  CHECK(doc.fp_markdown.find("| Miscellaneous |") != std::string::npos);
  CHECK(doc.fn_csv.find("SmartCheck,Reentrancy,1343,0,1237,106,1343 (106)\n") !=
        std::string::npos);
  CHECK(doc.fp_csv.find("Mythril,Reentrancy,4,100,60,40,20,16,32\n") !=
        std::string::npos);
}

}  // namespace
}  // namespace solbugsmith
