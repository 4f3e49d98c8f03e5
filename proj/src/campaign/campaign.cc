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

#include "solbugsmith/campaign.h"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "solbugsmith/error.h"
#include "solbugsmith/locator.h"
#include "solbugsmith/parser.h"
#include "solbugsmith/source.h"

namespace solbugsmith {
namespace fs = std::filesystem;

namespace {

using OrderedJson = nlohmann::ordered_json;

constexpr std::string_view kBugLogSuffix = ".buglog.json";

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::vector<fs::path> FilesEndingWith(const fs::path& dir, std::string_view suffix) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && EndsWith(e.path().filename().string(), suffix)) {
      out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

InjectOutput InjectOne(const SourceFile& file, BugType type, const BugPool& pool,
                       int counter_start) {
  InjectOutput out;
  out.name = file.name;
  out.bug_type = type;
  try {
    SourceUnit unit = Parse(file.text);
    InjectionProfile profile =
        FindAllPotentialLocations(unit, type, pool, file.name);
    out.profile_json = ProfileToJson(profile);
    InjectionResult r =
        InjectAll(file.text, profile, pool, counter_start, out.BuggyFileName());
    out.buggy_source = std::move(r.buggy_source);
    out.log = std::move(r.log);
    std::vector<Diagnostic> diags = Validate(out.buggy_source);
    if (!diags.empty()) {
      out.error = "output invalid at " + std::to_string(diags[0].line) + ":" +
                  std::to_string(diags[0].column) + ": " + diags[0].message;
    }
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

std::uint64_t MixSeed(std::uint64_t seed, std::string_view a, std::uint64_t b) {
  const std::uint64_t h = ContentHash(a);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(b)};
  std::mt19937_64 rng(seq);
  return rng();
}

// "c01.Reentrancy.buglog.json" -> ("c01.Reentrancy.sol", Reentrancy)
std::pair<std::string, std::optional<BugType>> BuggyFileOf(const fs::path& log_path) {
  std::string stem = log_path.filename().string();
  stem.resize(stem.size() - kBugLogSuffix.size());
  std::optional<BugType> type;
  std::size_t dot = stem.rfind('.');
  if (dot != std::string::npos) type = ParseBugType(stem.substr(dot + 1));
  return {stem + ".sol", type};
}

BugLog ReadAllBugLogs(const fs::path& dir) {
  std::vector<fs::path> paths = FilesEndingWith(dir, kBugLogSuffix);
  if (paths.empty()) throw MissingBugLog("no BugLog files in " + dir.string());
  BugLog all;
  for (const fs::path& p : paths) {
    BugLog log = ReadBugLog(p);
    all.insert(all.end(), log.begin(), log.end());
  }
  return all;
}

OrderedJson CountsToJson(const PlantedCounts& c) {
  return {{"injected", c.injected},
          {"correct", c.correct},
          {"misidentifiedType", c.mistyped},
          {"unreported", c.missed},
          {"extra", c.extra}};
}

}  // namespace

std::string InjectOutput::BuggyFileName() const {
  return name + "." + std::string(BugTypeName(bug_type)) + ".sol";
}

std::vector<fs::path> ListCorpus(const fs::path& dir) {
  std::vector<fs::path> out = FilesEndingWith(dir, ".sol");
  return out;
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

BugPool LoadPoolOrDefault(const CampaignConfig& config) {
  if (!config.pool_path) return DefaultPool();
  return LoadPool(ReadText(*config.pool_path));
}

std::vector<ToolCapabilities> LoadCapabilitiesOrDefault(
    const CampaignConfig& config) {
  if (!config.capabilities_path) return DefaultCapabilities();
  return LoadCapabilities(ReadText(*config.capabilities_path));
}

std::vector<BugType> CampaignBugTypes(const CampaignConfig& config) {
  if (!config.tool) return config.bug_types;
  std::vector<ToolCapabilities> caps = LoadCapabilitiesOrDefault(config);
  const ToolCapabilities* tool = FindTool(caps, *config.tool);
  if (!tool) throw ScopeError("unknown tool '" + *config.tool + "'");
  if (tool->detects.empty()) {
    throw ScopeError("tool '" + *config.tool + "' detects no bug type");
  }
  std::vector<BugType> out;
  for (BugType t : config.bug_types) {
    if (tool->detects.count(t)) out.push_back(t);
  }
  return out;
}

std::vector<SourceFile> LoadCorpus(const fs::path& dir) {
  std::vector<SourceFile> out;
  for (const fs::path& p : ListCorpus(dir)) {
    out.push_back({p.stem().string(), ReadText(p)});
  }
  return out;
}

std::vector<InjectOutput> InjectCorpusSerial(const std::vector<SourceFile>& files,
                                             const std::vector<BugType>& types,
                                             const BugPool& pool,
                                             int counter_start) {
  std::vector<InjectOutput> out;
  out.reserve(files.size() * types.size());
  for (const SourceFile& f : files) {
    for (BugType t : types) out.push_back(InjectOne(f, t, pool, counter_start));
  }
  return out;
}

std::vector<InjectOutput> InjectCorpusParallel(const std::vector<SourceFile>& files,
                                               const std::vector<BugType>& types,
                                               const BugPool& pool,
                                               int counter_start, int jobs) {
  const long n = static_cast<long>(files.size() * types.size());
  std::vector<InjectOutput> out(static_cast<std::size_t>(n));
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    out[k] = InjectOne(files[k / types.size()], types[k % types.size()], pool,
                       counter_start);
  }
  return out;
}

CampaignSummary CmdLocate(const CampaignConfig& config) {
  const BugPool pool = LoadPoolOrDefault(config);
  const std::vector<BugType> types = CampaignBugTypes(config);
  const std::vector<SourceFile> files = LoadCorpus(config.corpus_dir);
  fs::create_directories(config.out_dir);
  CampaignSummary summary;
  summary.files = static_cast<int>(files.size());
  for (const SourceFile& f : files) {
    SourceUnit unit;
    try {
      unit = Parse(f.text);
    } catch (const Error& e) {
      summary.failures.push_back(f.name + ": " + e.what());
      continue;
    }
    for (BugType t : types) {
      InjectionProfile p = FindAllPotentialLocations(unit, t, pool, f.name);
      WriteText(config.out_dir /
                    (f.name + "." + std::string(BugTypeName(t)) + ".bip.json"),
                ProfileToJson(p));
      ++summary.outputs;
    }
  }
  return summary;
}

CampaignSummary CmdInject(const CampaignConfig& config) {
  const BugPool pool = LoadPoolOrDefault(config);
  const std::vector<BugType> types = CampaignBugTypes(config);
  const std::vector<SourceFile> files = LoadCorpus(config.corpus_dir);
  std::vector<InjectOutput> outputs =
      config.jobs == 1
          ? InjectCorpusSerial(files, types, pool, config.counter_start)
          : InjectCorpusParallel(files, types, pool, config.counter_start,
                                 config.jobs);
  fs::create_directories(config.out_dir);
  CampaignSummary summary;
  summary.files = static_cast<int>(files.size());
  for (const InjectOutput& o : outputs) {
    const std::string base = o.name + "." + std::string(BugTypeName(o.bug_type));
    if (!o.error.empty()) {
      summary.failures.push_back(base + ": " + o.error);
      if (o.buggy_source.empty()) continue;
    }
    WriteText(config.out_dir / (base + ".sol"), o.buggy_source);
    WriteBugLog(config.out_dir / (base + ".buglog.json"), o.log, BugLogFormat::kJson);
    WriteText(config.out_dir / (base + ".bip.json"), o.profile_json);
    ++summary.outputs;
  }
  return summary;
}

OracleTruth CmdOracle(const CampaignConfig& config, const fs::path& injected_dir,
                      const OracleSpec& spec) {
  if (spec.miss_rate < 0 || spec.mistype_rate < 0 ||
      spec.miss_rate + spec.mistype_rate > 1 || spec.extra_per_file < 0) {
    throw DomainError("need missRate, mistypeRate >= 0, their sum <= 1 and "
                      "extraPerFile >= 0");
  }
  std::vector<fs::path> logs = FilesEndingWith(injected_dir, kBugLogSuffix);
  if (logs.empty()) throw MissingBugLog("no BugLog files in " + injected_dir.string());
  std::vector<ToolCapabilities> caps = LoadCapabilitiesOrDefault(config);
  const ToolCapabilities* known = FindTool(caps, spec.tool);
  auto in_scope = [&](BugType t) { return !known || known->detects.count(t) > 0; };

  OracleTruth truth;
  truth.tool = spec.tool;
  std::vector<Finding> report;
  for (const fs::path& log_path : logs) {
    const BugLog log = ReadBugLog(log_path);
    const auto [buggy_name, file_type] = BuggyFileOf(log_path);
    if (!file_type || !in_scope(*file_type)) continue;
    const std::string buggy = ReadText(injected_dir / buggy_name);
    std::mt19937_64 rng(MixSeed(spec.seed, buggy_name, 0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto make = [&](int line, BugType type, Planted planted) {
      Finding f;
      f.tool = spec.tool;
      f.file = buggy_name;
      f.line = line;
      f.type = type;
      f.planted = planted;
      return f;
    };
    std::set<int> injected_lines;
    for (const BugLogEntry& e : log) {
      for (int l = e.start_line; l <= e.end_line; ++l) injected_lines.insert(l);
      if (!in_scope(e.bug_type)) continue;
      PlantedCounts& c = truth.counts[e.bug_type];
      ++c.injected;
      const double u = unit(rng);
      if (u < spec.miss_rate) {
        ++c.missed;
      } else if (u < spec.miss_rate + spec.mistype_rate) {
        // A wrong label the tool could plausibly emit; any other type only if
        // the tool detects nothing else.
        std::vector<BugType> wrong_types;
        for (BugType t : kAllBugTypes) {
          if (t != e.bug_type && in_scope(t)) wrong_types.push_back(t);
        }
        if (wrong_types.empty()) {
          for (BugType t : kAllBugTypes) {
            if (t != e.bug_type) wrong_types.push_back(t);
          }
        }
        std::uniform_int_distribution<std::size_t> pick(0, wrong_types.size() - 1);
        const BugType wrong = wrong_types[pick(rng)];
        report.push_back(make(e.start_line, wrong, Planted::kMistyped));
        ++c.mistyped;
      } else {
        report.push_back(make(e.start_line, e.bug_type, Planted::kCorrect));
        ++c.correct;
      }
    }
    std::vector<int> free_lines;
    const int lines = LineMap(buggy).line_count();
    for (int l = 1; l <= lines; ++l) {
      if (!injected_lines.count(l)) free_lines.push_back(l);
    }
    std::vector<int> extra;
    std::sample(free_lines.begin(), free_lines.end(), std::back_inserter(extra),
                static_cast<std::size_t>(spec.extra_per_file), rng);
    for (int l : extra) report.push_back(make(l, *file_type, Planted::kExtra));
    truth.counts[*file_type].extra += static_cast<int>(extra.size());
  }

  fs::create_directories(config.out_dir);
  WriteText(config.out_dir / (spec.tool + ".oracle.json"),
            EmitReport(report, ReportAdapter::kSyntheticOracle));
  OrderedJson counts = OrderedJson::object();
  for (const auto& [type, c] : truth.counts) {
    counts[std::string(BugTypeName(type))] = CountsToJson(c);
  }
  OrderedJson doc = {{"tool", spec.tool},
                     {"seed", spec.seed},
                     {"missRate", spec.miss_rate},
                     {"mistypeRate", spec.mistype_rate},
                     {"extraPerFile", spec.extra_per_file},
                     {"counts", counts}};
  WriteText(config.out_dir / (spec.tool + ".truth.json"), doc.dump(2) + "\n");
  return truth;
}

OracleTruth ReadOracleTruth(const fs::path& path) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(ReadText(path));
    OracleTruth truth;
    truth.tool = doc.at("tool").get<std::string>();
    for (const auto& [name, c] : doc.at("counts").items()) {
      std::optional<BugType> t = ParseBugType(name);
      if (!t) throw FormatError(1, "unknown bug type '" + name + "'");
      truth.counts[*t] = {c.at("injected").get<int>(), c.at("correct").get<int>(),
                          c.at("misidentifiedType").get<int>(),
                          c.at("unreported").get<int>(), c.at("extra").get<int>()};
    }
    return truth;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(1, path.string() + ": " + e.what());
  }
}

std::map<std::string, std::map<BugType, int>> LoadConfirmed(
    std::string_view json_text) {
  std::map<std::string, std::map<BugType, int>> out;
  try {
    OrderedJson doc = OrderedJson::parse(json_text);
    for (const auto& [tool, per_type] : doc.items()) {
      for (const auto& [name, n] : per_type.items()) {
        std::optional<BugType> t = ParseBugType(name);
        if (!t || !n.is_number_integer()) {
          throw FormatError(1, "bad judgment " + tool + "/" + name);
        }
        out[tool][*t] = n.get<int>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(1, e.what());
  }
  return out;
}

EvaluateOutcome CmdEvaluate(const CampaignConfig& config,
                            const fs::path& injected_dir,
                            const fs::path& reports_dir,
                            const EvaluateOptions& options) {
  EvaluateOutcome outcome;
  EvaluationResult& result = outcome.result;
  const BugLog log = ReadAllBugLogs(injected_dir);
  for (const BugLogEntry& e : log) ++result.injected[e.bug_type];
  const std::vector<ToolCapabilities> caps = LoadCapabilitiesOrDefault(config);
  result.thresholds = config.thresholds_path
                          ? LoadThresholds(ReadText(*config.thresholds_path))
                          : DefaultThresholds();

  std::vector<std::pair<fs::path, ReportAdapter>> reports;
  for (const fs::path& p : FilesEndingWith(reports_dir, ".report.json")) {
    reports.push_back({p, ReportAdapter::kNormalizedJson});
  }
  for (const fs::path& p : FilesEndingWith(reports_dir, ".oracle.json")) {
    reports.push_back({p, ReportAdapter::kSyntheticOracle});
  }
  if (reports.empty()) {
    std::string expected;
    for (const ToolCapabilities& c : caps) {
      expected += (expected.empty() ? "" : ", ") + c.tool + ".report.json";
    }
    throw IoError("no reports in " + reports_dir.string() + "; expected " + expected);
  }
  std::map<std::string, std::vector<Finding>> by_tool;
  for (const auto& [path, adapter] : reports) {
    ++outcome.summary.files;
    try {
      for (Finding& f : IngestReport(ReadText(path), adapter)) {
        by_tool[f.tool].push_back(std::move(f));
      }
    } catch (const Error& e) {
      outcome.summary.failures.push_back(path.filename().string() + ": " + e.what());
    }
  }

  // Tools with reports, in capability-table order, then unknown tools.
  for (const ToolCapabilities& c : caps) {
    if (by_tool.count(c.tool)) result.tools.push_back(c);
  }
  for (const auto& [tool, findings] : by_tool) {
    if (!FindTool(caps, tool)) {
      result.tools.push_back({tool, {kAllBugTypes.begin(), kAllBugTypes.end()}});
    }
  }

  std::map<std::string, MajorityOutcome> majority;
  try {
    majority = FilterByMajority(by_tool, log, result.thresholds, options.policy);
  } catch (const MissingThreshold& e) {
    outcome.summary.failures.push_back(e.what());
  }
  const fs::path inspect_dir = config.out_dir / "inspect";
  for (const ToolCapabilities& tool : result.tools) {
    const std::vector<Finding>& findings = by_tool[tool.tool];
    std::vector<FNResult> fn =
        ScoreFalseNegatives(RestrictToScope(log, tool), findings, options.policy,
                            tool.tool);
    result.fn.insert(result.fn.end(), fn.begin(), fn.end());

    const MajorityOutcome& m = majority[tool.tool];
    result.miscellaneous[tool.tool] = m.miscellaneous;
    for (BugType t : kAllBugTypes) {
      if (!tool.detects.count(t)) continue;
      auto of_type = [&](const std::vector<Finding>& v) {
        std::vector<Finding> out;
        for (const Finding& f : v) {
          if (f.type == t) out.push_back(f);
        }
        return out;
      };
      FPResult fp;
      fp.tool = tool.tool;
      fp.bug_type = t;
      fp.reported = static_cast<int>(of_type(m.candidates).size());
      fp.excluded_by_majority = static_cast<int>(of_type(m.excluded).size());
      const std::vector<Finding> filtered = of_type(m.filtered);
      fp.filtered = static_cast<int>(filtered.size());
      const std::vector<Finding> sample = SampleForInspection(
          filtered, options.sample_size,
          MixSeed(config.seed, tool.tool, static_cast<std::uint64_t>(t)));
      fp.sampled = static_cast<int>(sample.size());
      auto judged = options.confirmed.find(tool.tool);
      if (judged != options.confirmed.end() && judged->second.count(t)) {
        fp.confirmed_in_sample = judged->second.at(t);
      } else if (std::all_of(sample.begin(), sample.end(), [](const Finding& f) {
                   return f.planted != Planted::kNone;
                 })) {
        fp.confirmed_in_sample = static_cast<int>(
            std::count_if(sample.begin(), sample.end(), [](const Finding& f) {
              return f.planted == Planted::kExtra;
            }));
      } else {
        fs::create_directories(inspect_dir);
        WriteText(inspect_dir / (tool.tool + "." + std::string(BugTypeName(t)) +
                                 ".json"),
                  EmitReport(sample, ReportAdapter::kNormalizedJson));
      }
      if (fp.confirmed_in_sample) {
        try {
          fp.estimated_fp =
              EstimateFalsePositives(fp.filtered, fp.sampled, *fp.confirmed_in_sample);
        } catch (const DomainError& e) {
          outcome.summary.failures.push_back(tool.tool + "/" +
                                             std::string(BugTypeName(t)) + ": " +
                                             e.what());
        }
      }
      result.fp.push_back(fp);
    }
  }

  outcome.document = RenderTables(result);
  std::string note;
  if (!outcome.summary.ok()) {
    note = "Partial results; unreadable inputs:\n\n";
    for (const std::string& f : outcome.summary.failures) note += "- " + f + "\n";
    note += "\n";
  }
  fs::create_directories(config.out_dir);
  WriteText(config.out_dir / "fn.md", note + outcome.document.fn_markdown);
  WriteText(config.out_dir / "fp.md", note + outcome.document.fp_markdown);
  WriteText(config.out_dir / "fn.csv", outcome.document.fn_csv);
  WriteText(config.out_dir / "fp.csv", outcome.document.fp_csv);

  OrderedJson doc = {{"fn", OrderedJson::array()},
                     {"fp", OrderedJson::array()},
                     {"miscellaneous", result.miscellaneous},
                     {"failures", outcome.summary.failures}};
  for (const FNResult& r : result.fn) {
    doc["fn"].push_back({{"tool", r.tool},
                         {"bugType", BugTypeName(r.bug_type)},
                         {"injected", r.injected},
                         {"correctlyDetected", r.correctly_detected},
                         {"misidentifiedType", r.misidentified_type},
                         {"unreported", r.unreported}});
  }
  auto opt = [](const std::optional<int>& v) {
    return v ? OrderedJson(*v) : OrderedJson();
  };
  for (const FPResult& r : result.fp) {
    doc["fp"].push_back({{"tool", r.tool},
                         {"bugType", BugTypeName(r.bug_type)},
                         {"reported", r.reported},
                         {"excludedByMajority", r.excluded_by_majority},
                         {"filtered", r.filtered},
                         {"sampled", r.sampled},
                         {"confirmedInSample", opt(r.confirmed_in_sample)},
                         {"estimatedFP", opt(r.estimated_fp)}});
  }
  WriteText(config.out_dir / "results.json", doc.dump(2) + "\n");
  outcome.summary.outputs = 5;
  return outcome;
}

std::vector<BenchRow> CmdBench(const CampaignConfig& config, int repeats) {
  if (repeats < 1) throw DomainError("repeats must be at least 1");
  const BugPool pool = LoadPoolOrDefault(config);
  const std::vector<BugType> types = CampaignBugTypes(config);
  std::vector<BenchRow> rows;
  for (const SourceFile& f : LoadCorpus(config.corpus_dir)) {
    BenchRow row;
    row.name = f.name;
    row.lines = LineMap(f.text).line_count();
    double total = 0;
    for (int r = 0; r < repeats; ++r) {
      const auto start = std::chrono::steady_clock::now();
      for (BugType t : types) {
        InjectOutput o = InjectOne(f, t, pool, config.counter_start);
        if (!o.error.empty()) throw Error(f.name + ": " + o.error);
      }
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
      row.min_ms = r == 0 ? ms : std::min(row.min_ms, ms);
      row.max_ms = std::max(row.max_ms, ms);
      total += ms;
    }
    row.mean_ms = total / repeats;
    rows.push_back(row);
  }
  return rows;
}

std::string RenderBench(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << "| Contract | Lines | Min ms | Mean ms | Max ms |\n|---|---|---|---|---|\n";
  double sum = 0;
  for (const BenchRow& r : rows) {
    out << "| " << r.name << " | " << r.lines << " | " << r.min_ms << " | "
        << r.mean_ms << " | " << r.max_ms << " |\n";
    sum += r.mean_ms;
  }
  if (!rows.empty()) {
    out << "| average | | | " << sum / static_cast<double>(rows.size()) << " | |\n";
  }
  return out.str();
}

}  // namespace solbugsmith
