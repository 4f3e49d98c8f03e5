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

// Command-line driver: locate, inject, oracle, evaluate, bench, pool.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "solbugsmith/ast_json.h"
#include "solbugsmith/campaign.h"
#include "solbugsmith/error.h"
#include "solbugsmith/locator.h"
#include "solbugsmith/parser.h"

namespace fs = std::filesystem;
using namespace solbugsmith;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailures = 2;

struct UsageError : Error {
  using Error::Error;
};

struct Flags {
  std::string corpus;
  std::string pool;
  std::vector<std::string> bug_types;
  std::string capabilities;
  std::string thresholds;
  std::string out;
  std::uint64_t seed = 0;
  int counter_start = 0;
  int jobs = 1;
  int line_slack = 0;
  int sample_size = 20;
  int repeats = 5;
  std::string tool;
  double miss_rate = 0;
  double mistype_rate = 0;
  int extra_per_file = 0;
  std::string injected;
  std::string reports;
  std::string confirmed;
  std::string dump_ast;
  std::string dump_bip;
};

CampaignConfig ToConfig(const Flags& f, bool scope_by_tool) {
  CampaignConfig c;
  c.corpus_dir = f.corpus;
  if (!f.pool.empty()) c.pool_path = f.pool;
  if (!f.capabilities.empty()) c.capabilities_path = f.capabilities;
  if (!f.thresholds.empty()) c.thresholds_path = f.thresholds;
  c.out_dir = f.out;
  c.seed = f.seed;
  c.counter_start = f.counter_start;
  c.jobs = f.jobs;
  if (scope_by_tool && !f.tool.empty()) c.tool = f.tool;
  if (!f.bug_types.empty()) {
    c.bug_types.clear();
    for (const std::string& name : f.bug_types) {
      if (name == "all") {
        c.bug_types.assign(kAllBugTypes.begin(), kAllBugTypes.end());
        continue;
      }
      std::optional<BugType> t = ParseBugType(name);
      if (!t) throw UsageError("unknown bug type '" + name + "'");
      if (std::find(c.bug_types.begin(), c.bug_types.end(), *t) ==
          c.bug_types.end()) {
        c.bug_types.push_back(*t);
      }
    }
  }
  return c;
}

void RequireDir(const std::string& flag, const std::string& value) {
  if (value.empty()) throw UsageError(flag + " is required");
  if (!fs::is_directory(value)) throw UsageError(flag + ": no such directory " + value);
}

void RequireTypes(const CampaignConfig& c) {
  if (CampaignBugTypes(c).empty()) throw UsageError("no bug types selected");
}

int Report(const std::string& command, const CampaignSummary& s) {
  for (const std::string& f : s.failures) std::cerr << command << ": " << f << "\n";
  std::cerr << command << ": " << s.files << " file(s), " << s.outputs
            << " output(s), " << s.failures.size() << " failure(s)\n";
  return s.ok() ? kOk : kFailures;
}

int RunLocate(const Flags& f) {
  if (!f.dump_ast.empty()) {
    SourceUnit unit = Parse(ReadText(f.dump_ast));
    std::cout << AstToJson(unit).dump(2) << "\n";
    return kOk;
  }
  CampaignConfig c = ToConfig(f, true);
  RequireTypes(c);
  if (!f.dump_bip.empty()) {
    const std::string text = ReadText(f.dump_bip);
    SourceUnit unit = Parse(text);
    const BugPool pool = LoadPoolOrDefault(c);
    for (BugType t : CampaignBugTypes(c)) {
      std::cout << ProfileToJson(FindAllPotentialLocations(
          unit, t, pool, fs::path(f.dump_bip).stem().string()));
    }
    return kOk;
  }
  RequireDir("--corpus", f.corpus);
  if (f.out.empty()) throw UsageError("--out is required");
  return Report("locate", CmdLocate(c));
}

int RunInject(const Flags& f) {
  CampaignConfig c = ToConfig(f, true);
  RequireDir("--corpus", f.corpus);
  if (f.out.empty()) throw UsageError("--out is required");
  RequireTypes(c);
  return Report("inject", CmdInject(c));
}

int RunOracle(const Flags& f) {
  RequireDir("--injected", f.injected);
  if (f.out.empty()) throw UsageError("--out is required");
  CampaignConfig c = ToConfig(f, false);
  OracleSpec spec;
  spec.miss_rate = f.miss_rate;
  spec.mistype_rate = f.mistype_rate;
  spec.extra_per_file = f.extra_per_file;
  spec.seed = f.seed;
  if (!f.tool.empty()) spec.tool = f.tool;
  OracleTruth truth = CmdOracle(c, f.injected, spec);
  for (const auto& [type, n] : truth.counts) {
    std::cerr << "oracle: " << BugTypeName(type) << ": " << n.injected
              << " injected, " << n.correct << " correct, " << n.mistyped
              << " mistyped, " << n.missed << " missed, " << n.extra << " extra\n";
  }
  return kOk;
}

int RunEvaluate(const Flags& f) {
  RequireDir("--injected", f.injected);
  RequireDir("--reports", f.reports);
  if (f.out.empty()) throw UsageError("--out is required");
  if (f.sample_size < 0 || f.line_slack < 0) {
    throw UsageError("--sample-size and --line-slack must be non-negative");
  }
  CampaignConfig c = ToConfig(f, false);
  EvaluateOptions options;
  options.policy.line_slack = f.line_slack;
  options.sample_size = f.sample_size;
  if (!f.confirmed.empty()) options.confirmed = LoadConfirmed(ReadText(f.confirmed));
  EvaluateOutcome o = CmdEvaluate(c, f.injected, f.reports, options);
  std::cout << o.document.fn_markdown << "\n" << o.document.fp_markdown;
  return Report("evaluate", o.summary);
}

int RunBench(const Flags& f) {
  RequireDir("--corpus", f.corpus);
  CampaignConfig c = ToConfig(f, true);
  RequireTypes(c);
  const std::string table = RenderBench(CmdBench(c, f.repeats));
  std::cout << table;
  if (!f.out.empty()) {
    fs::create_directories(f.out);
    WriteText(fs::path(f.out) / "bench.md", table);
  }
  return kOk;
}

int RunPool(const Flags& f) {
  CampaignConfig c = ToConfig(f, false);
  const std::string json = SerializePool(LoadPoolOrDefault(c));
  if (f.out.empty()) {
    std::cout << json;
  } else {
    WriteText(f.out, json);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inject security bugs into Solidity contracts and score analyzers."};
  app.require_subcommand(1);
  Flags f;

  auto corpus = [&](CLI::App* s) {
    s->add_option("--corpus", f.corpus, "Directory of .sol contracts");
  };
  auto types = [&](CLI::App* s) {
    s->add_option("--bug-types", f.bug_types, "Comma-separated bug types, or all")
        ->delimiter(',');
  };
  auto pool = [&](CLI::App* s) {
    s->add_option("--pool", f.pool, "Bug pool JSON (default: built-in)");
  };
  auto caps = [&](CLI::App* s) {
    s->add_option("--capabilities", f.capabilities,
                  "Tool capability JSON (default: built-in)");
  };
  auto out = [&](CLI::App* s, const char* what) {
    s->add_option("--out", f.out, what);
  };
  auto seed = [&](CLI::App* s) {
    s->add_option("--seed", f.seed, "Random seed")->envname("SOLBUGSMITH_SEED");
  };
  auto tool = [&](CLI::App* s, const char* what) {
    s->add_option("--tool", f.tool, what);
  };

  CLI::App* locate = app.add_subcommand("locate", "Write injection profiles");
  corpus(locate);
  types(locate);
  pool(locate);
  caps(locate);
  out(locate, "Output directory");
  seed(locate);
  tool(locate, "Only the bug types this tool detects");
  locate->add_option("--jobs", f.jobs, "Worker threads (0: all cores)");
  locate->add_option("--dump-ast", f.dump_ast, "Print the AST of one file");
  locate->add_option("--dump-bip", f.dump_bip, "Print the profiles of one file");

  CLI::App* inject = app.add_subcommand("inject", "Write buggy contracts and BugLogs");
  corpus(inject);
  types(inject);
  pool(inject);
  caps(inject);
  out(inject, "Output directory");
  seed(inject);
  tool(inject, "Only the bug types this tool detects");
  inject->add_option("--counter-start", f.counter_start, "First bug counter value");
  inject->add_option("--jobs", f.jobs, "Worker threads (0: all cores)");

  CLI::App* oracle = app.add_subcommand("oracle", "Write a synthetic tool report");
  oracle->add_option("--injected", f.injected, "Output directory of inject");
  out(oracle, "Report directory");
  caps(oracle);
  seed(oracle);
  tool(oracle, "Name of the synthetic tool (default Oracle)");
  oracle->add_option("--miss-rate", f.miss_rate, "Share of bugs not reported")
      ->check(CLI::Range(0.0, 1.0));
  oracle->add_option("--mistype-rate", f.mistype_rate,
                     "Share of bugs reported with a wrong type")
      ->check(CLI::Range(0.0, 1.0));
  oracle->add_option("--extra-per-file", f.extra_per_file,
                     "Spurious findings per buggy file")
      ->check(CLI::NonNegativeNumber);

  CLI::App* evaluate = app.add_subcommand("evaluate", "Score reports against BugLogs");
  evaluate->add_option("--injected", f.injected, "Output directory of inject");
  evaluate->add_option("--reports", f.reports,
                       "Directory of *.report.json / *.oracle.json");
  out(evaluate, "Directory for the tables");
  caps(evaluate);
  seed(evaluate);
  evaluate->add_option("--thresholds", f.thresholds,
                       "Majority thresholds JSON (default: built-in)");
  evaluate->add_option("--line-slack", f.line_slack, "Line tolerance for matches");
  evaluate->add_option("--sample-size", f.sample_size, "Findings to inspect per cell");
  evaluate->add_option("--confirmed", f.confirmed,
                       "JSON of confirmed false positives per tool and type");

  CLI::App* bench = app.add_subcommand("bench", "Time injection per contract");
  corpus(bench);
  types(bench);
  pool(bench);
  caps(bench);
  tool(bench, "Only the bug types this tool detects");
  out(bench, "Directory for bench.md");
  bench->add_option("--counter-start", f.counter_start, "First bug counter value");
  bench->add_option("--repeats", f.repeats, "Runs per contract")
      ->check(CLI::PositiveNumber);

  CLI::App* pool_cmd = app.add_subcommand("pool", "Print the bug pool as JSON");
  pool(pool_cmd);
  out(pool_cmd, "File to write instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (locate->parsed()) return RunLocate(f);
    if (inject->parsed()) return RunInject(f);
    if (oracle->parsed()) return RunOracle(f);
    if (evaluate->parsed()) return RunEvaluate(f);
    if (bench->parsed()) return RunBench(f);
    if (pool_cmd->parsed()) return RunPool(f);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
