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

#ifndef SOLBUGSMITH_CAMPAIGN_H_
#define SOLBUGSMITH_CAMPAIGN_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solbugsmith/bug_pool.h"
#include "solbugsmith/bug_type.h"
#include "solbugsmith/evaluator.h"
#include "solbugsmith/injector.h"

namespace solbugsmith {

struct CampaignConfig {
  std::filesystem::path corpus_dir;
  std::optional<std::filesystem::path> pool_path;
  std::vector<BugType> bug_types{kAllBugTypes.begin(), kAllBugTypes.end()};
  std::optional<std::filesystem::path> capabilities_path;
  std::optional<std::filesystem::path> thresholds_path;
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  int counter_start = 0;
  // 0 means one worker per core; 1 runs the serial reference.
  int jobs = 1;
  // Inject only what this tool is supposed to detect.
  std::optional<std::string> tool;
};

struct CampaignSummary {
  int files = 0;
  int outputs = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Sorted .sol files directly under `dir`. Throws IoError.
std::vector<std::filesystem::path> ListCorpus(const std::filesystem::path& dir);

std::string ReadText(const std::filesystem::path& path);
void WriteText(const std::filesystem::path& path, const std::string& text);

BugPool LoadPoolOrDefault(const CampaignConfig& config);
std::vector<ToolCapabilities> LoadCapabilitiesOrDefault(
    const CampaignConfig& config);

// Bug types of the campaign after tool scoping.
std::vector<BugType> CampaignBugTypes(const CampaignConfig& config);

struct SourceFile {
  std::string name;  // stem, e.g. "c01_simple_wallet"
  std::string text;
};

// Everything produced for one (contract, bug type).
struct InjectOutput {
  std::string name;
  BugType bug_type = BugType::kReentrancy;
  std::string buggy_source;
  BugLog log;
  std::string profile_json;
  // Empty when the contract parsed and the output validated.
  std::string error;

  std::string BuggyFileName() const;
};

// Locate and inject every (file, type) pair. The parallel kernel splits the
// pairs over OpenMP threads; both return results in (file, type) order and
// must agree byte for byte.
std::vector<InjectOutput> InjectCorpusSerial(const std::vector<SourceFile>& files,
                                             const std::vector<BugType>& types,
                                             const BugPool& pool, int counter_start);
std::vector<InjectOutput> InjectCorpusParallel(
    const std::vector<SourceFile>& files, const std::vector<BugType>& types,
    const BugPool& pool, int counter_start, int jobs);

std::vector<SourceFile> LoadCorpus(const std::filesystem::path& dir);

// Writes <name>.<bugType>.bip.json per pair.
CampaignSummary CmdLocate(const CampaignConfig& config);
// Writes <name>.<bugType>.sol, .buglog.json and .bip.json per pair.
CampaignSummary CmdInject(const CampaignConfig& config);

struct OracleSpec {
  double miss_rate = 0;
  double mistype_rate = 0;
  int extra_per_file = 0;
  std::uint64_t seed = 0;
  std::string tool = "Oracle";
};

// Planted counts for one bug type.
struct PlantedCounts {
  int injected = 0;
  int correct = 0;
  int mistyped = 0;
  int missed = 0;
  int extra = 0;

  friend bool operator==(const PlantedCounts&, const PlantedCounts&) = default;
};

struct OracleTruth {
  std::string tool;
  std::map<BugType, PlantedCounts> counts;
};

// Reads the BugLogs of an inject run in `injected_dir` and writes
// <tool>.oracle.json (synthetic-oracle report) and <tool>.truth.json into
// config.out_dir. Throws MissingBugLog if there are none.
OracleTruth CmdOracle(const CampaignConfig& config,
                      const std::filesystem::path& injected_dir,
                      const OracleSpec& spec);
OracleTruth ReadOracleTruth(const std::filesystem::path& path);

struct EvaluateOptions {
  MatchPolicy policy;
  int sample_size = 20;
  // Operator judgments: tool -> type -> confirmed false positives in the
  // sample. Synthetic reports judge themselves.
  std::map<std::string, std::map<BugType, int>> confirmed;
};

struct EvaluateOutcome {
  EvaluationResult result;
  ReportDocument document;
  CampaignSummary summary;
};

// Scores every report in `reports_dir` (*.report.json as normalized-json,
// *.oracle.json as synthetic-oracle) against the BugLogs in `injected_dir`
// and writes fn.md, fp.md, fn.csv, fp.csv and results.json to
// config.out_dir. Throws IoError when there is no report at all.
EvaluateOutcome CmdEvaluate(const CampaignConfig& config,
                            const std::filesystem::path& injected_dir,
                            const std::filesystem::path& reports_dir,
                            const EvaluateOptions& options = {});

std::map<std::string, std::map<BugType, int>> LoadConfirmed(
    std::string_view json_text);

struct BenchRow {
  std::string name;
  int lines = 0;
  double min_ms = 0;
  double mean_ms = 0;
  double max_ms = 0;
};

// Wall-clock of locate + inject + validate for all campaign bug types, per
// contract, over `repeats` runs. Nothing is written to disk while timing.
std::vector<BenchRow> CmdBench(const CampaignConfig& config, int repeats);
std::string RenderBench(const std::vector<BenchRow>& rows);

}  // namespace solbugsmith

#endif  // SOLBUGSMITH_CAMPAIGN_H_
