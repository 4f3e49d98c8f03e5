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

#ifndef SOLBUGSMITH_EVALUATOR_H_
#define SOLBUGSMITH_EVALUATOR_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "solbugsmith/bug_type.h"
#include "solbugsmith/injector.h"
#include "solbugsmith/locator.h"

namespace solbugsmith {

// A reported type outside the seven bug types.
inline constexpr std::string_view kMiscellaneous = "Miscellaneous";

// How a synthetic finding was planted; empty for real reports.
enum class Planted { kNone, kCorrect, kMistyped, kExtra };

struct Finding {
  std::string tool;
  std::string file;
  int line = 1;
  // nullopt is Miscellaneous.
  std::optional<BugType> type;
  std::optional<std::string> message;
  Planted planted = Planted::kNone;

  friend bool operator==(const Finding&, const Finding&) = default;
};

std::string_view ReportedTypeName(const std::optional<BugType>& type);

struct ToolCapabilities {
  std::string tool;
  std::set<BugType> detects;
};

// Table of tools in column order.
std::vector<ToolCapabilities> LoadCapabilities(std::string_view json_text);
std::vector<ToolCapabilities> DefaultCapabilities();
const ToolCapabilities* FindTool(const std::vector<ToolCapabilities>& caps,
                                 std::string_view tool);

using Thresholds = std::map<BugType, int>;

Thresholds LoadThresholds(std::string_view json_text);
Thresholds DefaultThresholds();
// Simple majority of the tools able to detect each type.
Thresholds MajorityThresholds(const std::vector<ToolCapabilities>& caps);

struct MatchPolicy {
  // A finding matches an entry if its line is within [startLine - k,
  // endLine + k].
  int line_slack = 0;
};

struct FNResult {
  std::string tool;
  BugType bug_type = BugType::kReentrancy;
  int injected = 0;
  int correctly_detected = 0;
  int misidentified_type = 0;
  int unreported = 0;

  int undetected() const { return misidentified_type + unreported; }
  friend bool operator==(const FNResult&, const FNResult&) = default;
};

struct FPResult {
  std::string tool;
  BugType bug_type = BugType::kReentrancy;
  int reported = 0;
  int excluded_by_majority = 0;
  int filtered = 0;
  int sampled = 0;
  // Unknown until someone has inspected the sample.
  std::optional<int> confirmed_in_sample;
  std::optional<int> estimated_fp;

  friend bool operator==(const FPResult&, const FPResult&) = default;
};

enum class ReportAdapter { kNormalizedJson, kSyntheticOracle };

std::optional<ReportAdapter> ParseAdapter(std::string_view id);

// Normalized report: JSON array of {tool, file, line, type, message}. The
// synthetic-oracle adapter additionally requires "planted". Unknown type
// names become Miscellaneous. Throws FormatError.
std::vector<Finding> IngestReport(std::string_view bytes, ReportAdapter adapter);
std::string EmitReport(const std::vector<Finding>& findings,
                       ReportAdapter adapter);

// One result per bug type present in `log`, in kAllBugTypes order. Entries
// first take findings of their own type; the rest then take any finding on
// their lines. Each finding is used at most once.
std::vector<FNResult> ScoreFalseNegatives(const BugLog& log,
                                          const std::vector<Finding>& findings,
                                          const MatchPolicy& policy = {},
                                          const std::string& tool = "");

// Throws ScopeError for a tool that detects nothing.
BugLog RestrictToScope(const BugLog& log, const ToolCapabilities& caps);
std::vector<InjectionProfile> RestrictToScope(
    const std::vector<InjectionProfile>& profiles, const ToolCapabilities& caps);

struct MajorityOutcome {
  // Findings away from injected bugs, by reported type.
  std::vector<Finding> candidates;
  // Candidates also reported by at least the threshold number of tools.
  std::vector<Finding> excluded;
  // The rest: possible false positives.
  std::vector<Finding> filtered;
  // Miscellaneous findings are only counted.
  int miscellaneous = 0;
};

// Throws MissingThreshold for a bug type reported without a threshold.
std::map<std::string, MajorityOutcome> FilterByMajority(
    const std::map<std::string, std::vector<Finding>>& findings_by_tool,
    const BugLog& log, const Thresholds& thresholds,
    const MatchPolicy& policy = {});

// round(filtered * confirmed / sampled), halves away from zero; 0 when
// nothing was sampled. Throws DomainError unless
// 0 <= confirmed <= sampled <= filtered.
int EstimateFalsePositives(int filtered, int sampled, int confirmed);

// Uniform sample without replacement, in input order; everything if there
// are at most `size` findings.
std::vector<Finding> SampleForInspection(const std::vector<Finding>& filtered,
                                         int size, std::uint64_t seed);

struct EvaluationResult {
  std::vector<ToolCapabilities> tools;
  Thresholds thresholds;
  std::vector<FNResult> fn;
  std::vector<FPResult> fp;
  // Bug type -> entries in the BugLog. Types missing here fall back to the
  // largest FN injected count.
  std::map<BugType, int> injected;
  // Tool -> count of Miscellaneous findings.
  std::map<std::string, int> miscellaneous;
};

struct ReportDocument {
  std::string fn_markdown;
  std::string fp_markdown;
  std::string fn_csv;
  std::string fp_csv;
};

// Cell for one tool and type: "total (unreported)", a check mark when
// nothing went undetected, NA outside the tool's capabilities.
std::string FNCell(const FNResult* result, bool in_scope);

ReportDocument RenderTables(const EvaluationResult& result);

}  // namespace solbugsmith

#endif  // SOLBUGSMITH_EVALUATOR_H_
