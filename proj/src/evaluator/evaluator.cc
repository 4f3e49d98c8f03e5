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

#include "solbugsmith/evaluator.h"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <tuple>
#include <utility>

#include <nlohmann/json.hpp>

#include "solbugsmith/error.h"
#include "solbugsmith/source.h"

namespace solbugsmith {
namespace {

using OrderedJson = nlohmann::ordered_json;

constexpr char kDefaultCapabilities[] = R"({
  "Oyente": ["Reentrancy", "TimestampDependency", "UnhandledException", "TOD", "IntegerOverflowUnderflow"],
  "Securify": ["Reentrancy", "UncheckedSend", "UnhandledException", "TOD"],
  "Mythril": ["Reentrancy", "TimestampDependency", "UncheckedSend", "UnhandledException", "IntegerOverflowUnderflow", "TxOrigin"],
  "SmartCheck": ["Reentrancy", "TimestampDependency", "UnhandledException", "IntegerOverflowUnderflow", "TxOrigin"],
  "Manticore": ["Reentrancy", "IntegerOverflowUnderflow"],
  "Slither": ["Reentrancy", "TimestampDependency", "UnhandledException", "TxOrigin"]
})";

constexpr char kDefaultThresholds[] = R"({
  "Reentrancy": 4,
  "TimestampDependency": 3,
  "UncheckedSend": 2,
  "UnhandledException": 3,
  "TOD": 2,
  "IntegerOverflowUnderflow": 3,
  "TxOrigin": 2
})";

OrderedJson ParseJson(std::string_view text) {
  try {
    return OrderedJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    LineMap lines(text);
    std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw FormatError(lines.LineOf(std::min(at, text.size())),
                      std::string("malformed JSON: ") + e.what());
  }
}

BugType RequireBugType(const OrderedJson& value, int line) {
  if (!value.is_string()) throw FormatError(line, "bug type must be a string");
  std::optional<BugType> t = ParseBugType(value.get<std::string>());
  if (!t) {
    throw FormatError(line, "unknown bug type '" + value.get<std::string>() + "'");
  }
  return *t;
}

// Assigns points to intervals, each used at most once, maximizing the number
// of matched intervals: sweep points in order, give each to the open interval
// that closes first.
std::vector<int> GreedyMatch(const std::vector<std::pair<long, long>>& intervals,
                             const std::vector<long>& points) {
  std::vector<int> match(intervals.size(), -1);
  std::vector<std::size_t> by_start(intervals.size());
  std::iota(by_start.begin(), by_start.end(), 0);
  std::stable_sort(by_start.begin(), by_start.end(), [&](auto a, auto b) {
    return intervals[a].first < intervals[b].first;
  });
  std::vector<std::size_t> by_point(points.size());
  std::iota(by_point.begin(), by_point.end(), 0);
  std::stable_sort(by_point.begin(), by_point.end(),
                   [&](auto a, auto b) { return points[a] < points[b]; });

  using Open = std::pair<long, std::size_t>;  // (end, interval)
  std::priority_queue<Open, std::vector<Open>, std::greater<Open>> open;
  std::size_t next = 0;
  for (std::size_t p : by_point) {
    const long x = points[p];
    while (next < by_start.size() && intervals[by_start[next]].first <= x) {
      open.push({intervals[by_start[next]].second, by_start[next]});
      ++next;
    }
    while (!open.empty() && open.top().first < x) open.pop();
    if (open.empty()) continue;
    match[open.top().second] = static_cast<int>(p);
    open.pop();
  }
  return match;
}

std::size_t TypeIndex(BugType t) { return static_cast<std::size_t>(t); }

}  // namespace

std::string_view ReportedTypeName(const std::optional<BugType>& type) {
  return type ? BugTypeName(*type) : kMiscellaneous;
}

std::vector<ToolCapabilities> LoadCapabilities(std::string_view json_text) {
  OrderedJson doc = ParseJson(json_text);
  if (!doc.is_object()) throw FormatError(1, "capabilities must be an object");
  std::vector<ToolCapabilities> out;
  for (const auto& [tool, types] : doc.items()) {
    if (!types.is_array()) {
      throw FormatError(1, "capabilities of '" + tool + "' must be an array");
    }
    ToolCapabilities caps{tool, {}};
    for (const OrderedJson& t : types) caps.detects.insert(RequireBugType(t, 1));
    out.push_back(std::move(caps));
  }
  return out;
}

std::vector<ToolCapabilities> DefaultCapabilities() {
  return LoadCapabilities(kDefaultCapabilities);
}

const ToolCapabilities* FindTool(const std::vector<ToolCapabilities>& caps,
                                 std::string_view tool) {
  for (const ToolCapabilities& c : caps) {
    if (c.tool == tool) return &c;
  }
  return nullptr;
}

Thresholds LoadThresholds(std::string_view json_text) {
  OrderedJson doc = ParseJson(json_text);
  if (!doc.is_object()) throw FormatError(1, "thresholds must be an object");
  Thresholds out;
  for (const auto& [name, value] : doc.items()) {
    BugType t = RequireBugType(OrderedJson(name), 1);
    if (!value.is_number_integer() || value.get<int>() < 1) {
      throw FormatError(1, "threshold of '" + name + "' must be a positive integer");
    }
    out[t] = value.get<int>();
  }
  return out;
}

Thresholds DefaultThresholds() { return LoadThresholds(kDefaultThresholds); }

Thresholds MajorityThresholds(const std::vector<ToolCapabilities>& caps) {
  Thresholds out;
  for (BugType t : kAllBugTypes) {
    int n = 0;
    for (const ToolCapabilities& c : caps) n += c.detects.count(t) ? 1 : 0;
    if (n > 0) out[t] = n / 2 + 1;
  }
  return out;
}

std::optional<ReportAdapter> ParseAdapter(std::string_view id) {
  if (id == "normalized-json") return ReportAdapter::kNormalizedJson;
  if (id == "synthetic-oracle") return ReportAdapter::kSyntheticOracle;
  return std::nullopt;
}

std::vector<Finding> IngestReport(std::string_view bytes, ReportAdapter adapter) {
  const bool blank = std::all_of(bytes.begin(), bytes.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
  if (blank) return {};
  OrderedJson doc = ParseJson(bytes);
  if (!doc.is_array()) throw FormatError(1, "report is not a JSON array");
  const std::vector<int> lines = JsonArrayElementLines(bytes);
  std::vector<Finding> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const OrderedJson& obj = doc[i];
    const int line = i < lines.size() ? lines[i] : 1;
    if (!obj.is_object()) throw FormatError(line, "finding is not an object");
    auto text = [&](const char* key) {
      auto it = obj.find(key);
      if (it == obj.end() || !it->is_string()) {
        throw FormatError(line, std::string("finding needs a string '") + key + "'");
      }
      return it->get<std::string>();
    };
    Finding f;
    f.tool = text("tool");
    f.file = text("file");
    auto ln = obj.find("line");
    if (ln == obj.end() || !ln->is_number_integer() || ln->get<long long>() < 1 ||
        ln->get<long long>() > 1'000'000'000) {
      throw FormatError(line, "finding needs a positive integer 'line'");
    }
    f.line = ln->get<int>();
    f.type = ParseBugType(text("type"));
    auto msg = obj.find("message");
    if (msg != obj.end() && !msg->is_null()) {
      if (!msg->is_string()) throw FormatError(line, "'message' must be a string");
      f.message = msg->get<std::string>();
    }
    if (adapter == ReportAdapter::kSyntheticOracle) {
      const std::string planted = text("planted");
      if (planted == "correct") {
        f.planted = Planted::kCorrect;
      } else if (planted == "mistyped") {
        f.planted = Planted::kMistyped;
      } else if (planted == "extra") {
        f.planted = Planted::kExtra;
      } else {
        throw FormatError(line, "unknown planted kind '" + planted + "'");
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::string EmitReport(const std::vector<Finding>& findings,
                       ReportAdapter adapter) {
  if (findings.empty()) return "[]\n";
  OrderedJson doc = OrderedJson::array();
  for (const Finding& f : findings) {
    OrderedJson obj = {{"tool", f.tool},
                       {"file", f.file},
                       {"line", f.line},
                       {"type", ReportedTypeName(f.type)},
                       {"message", f.message ? OrderedJson(*f.message) : OrderedJson()}};
    if (adapter == ReportAdapter::kSyntheticOracle) {
      static constexpr const char* kNames[] = {"", "correct", "mistyped", "extra"};
      obj["planted"] = kNames[static_cast<int>(f.planted)];
    }
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

std::vector<FNResult> ScoreFalseNegatives(const BugLog& log,
                                          const std::vector<Finding>& findings,
                                          const MatchPolicy& policy,
                                          const std::string& tool) {
  enum Outcome { kUnreported, kMisidentified, kCorrect };
  std::vector<Outcome> outcome(log.size(), kUnreported);

  std::map<std::string, std::vector<std::size_t>> entries_by_file;
  for (std::size_t i = 0; i < log.size(); ++i) entries_by_file[log[i].file].push_back(i);
  std::map<std::string, std::vector<std::size_t>> findings_by_file;
  for (std::size_t i = 0; i < findings.size(); ++i) {
    if (entries_by_file.count(findings[i].file)) {
      findings_by_file[findings[i].file].push_back(i);
    }
  }

  auto interval = [&](std::size_t e) {
    return std::make_pair(static_cast<long>(log[e].start_line) - policy.line_slack,
                          static_cast<long>(log[e].end_line) + policy.line_slack);
  };

  for (const auto& [file, entries] : entries_by_file) {
    const std::vector<std::size_t>& found = findings_by_file[file];
    std::vector<bool> used(found.size(), false);

    // Line and type.
    for (BugType t : kAllBugTypes) {
      std::vector<std::size_t> es, fs;
      for (std::size_t e : entries) {
        if (log[e].bug_type == t) es.push_back(e);
      }
      for (std::size_t k = 0; k < found.size(); ++k) {
        if (findings[found[k]].type == t) fs.push_back(k);
      }
      if (es.empty() || fs.empty()) continue;
      std::vector<std::pair<long, long>> iv;
      for (std::size_t e : es) iv.push_back(interval(e));
      std::vector<long> pts;
      for (std::size_t k : fs) pts.push_back(findings[found[k]].line);
      std::vector<int> m = GreedyMatch(iv, pts);
      for (std::size_t j = 0; j < es.size(); ++j) {
        if (m[j] < 0) continue;
        outcome[es[j]] = kCorrect;
        used[fs[static_cast<std::size_t>(m[j])]] = true;
      }
    }

    // Line only, among what is left.
    std::vector<std::size_t> es, fs;
    for (std::size_t e : entries) {
      if (outcome[e] == kUnreported) es.push_back(e);
    }
    for (std::size_t k = 0; k < found.size(); ++k) {
      if (!used[k]) fs.push_back(k);
    }
    std::vector<std::pair<long, long>> iv;
    for (std::size_t e : es) iv.push_back(interval(e));
    std::vector<long> pts;
    for (std::size_t k : fs) pts.push_back(findings[found[k]].line);
    std::vector<int> m = GreedyMatch(iv, pts);
    for (std::size_t j = 0; j < es.size(); ++j) {
      if (m[j] >= 0) outcome[es[j]] = kMisidentified;
    }
  }

  std::array<std::optional<FNResult>, kAllBugTypes.size()> per_type;
  for (std::size_t i = 0; i < log.size(); ++i) {
    std::optional<FNResult>& r = per_type[TypeIndex(log[i].bug_type)];
    if (!r) r = FNResult{tool, log[i].bug_type};
    ++r->injected;
    switch (outcome[i]) {
      case kCorrect: ++r->correctly_detected; break;
      case kMisidentified: ++r->misidentified_type; break;
      case kUnreported: ++r->unreported; break;
    }
  }
  std::vector<FNResult> out;
  for (const auto& r : per_type) {
    if (r) out.push_back(*r);
  }
  return out;
}

BugLog RestrictToScope(const BugLog& log, const ToolCapabilities& caps) {
  if (caps.detects.empty()) {
    throw ScopeError("tool '" + caps.tool + "' detects no bug type");
  }
  BugLog out;
  for (const BugLogEntry& e : log) {
    if (caps.detects.count(e.bug_type)) out.push_back(e);
  }
  return out;
}

std::vector<InjectionProfile> RestrictToScope(
    const std::vector<InjectionProfile>& profiles, const ToolCapabilities& caps) {
  if (caps.detects.empty()) {
    throw ScopeError("tool '" + caps.tool + "' detects no bug type");
  }
  std::vector<InjectionProfile> out;
  for (const InjectionProfile& p : profiles) {
    if (caps.detects.count(p.bug_type)) out.push_back(p);
  }
  return out;
}

std::map<std::string, MajorityOutcome> FilterByMajority(
    const std::map<std::string, std::vector<Finding>>& findings_by_tool,
    const BugLog& log, const Thresholds& thresholds, const MatchPolicy& policy) {
  const long k = policy.line_slack;
  // Injected line ranges per file.
  std::map<std::string, std::vector<std::pair<long, long>>> injected;
  for (const BugLogEntry& e : log) {
    injected[e.file].push_back({e.start_line - k, e.end_line + k});
  }
  auto at_injected = [&](const Finding& f) {
    auto it = injected.find(f.file);
    if (it == injected.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(), [&](const auto& r) {
      return r.first <= f.line && f.line <= r.second;
    });
  };

  std::map<std::string, MajorityOutcome> out;
  // (file, type) -> line -> tools reporting it.
  std::map<std::pair<std::string, BugType>, std::map<long, std::set<std::string>>>
      reporters;
  for (const auto& [tool, findings] : findings_by_tool) {
    MajorityOutcome& o = out[tool];
    for (const Finding& f : findings) {
      if (!f.type) {
        ++o.miscellaneous;
        continue;
      }
      if (!thresholds.count(*f.type)) {
        throw MissingThreshold("no majority threshold for " +
                               std::string(BugTypeName(*f.type)));
      }
      if (at_injected(f)) continue;
      o.candidates.push_back(f);
      reporters[{f.file, *f.type}][f.line].insert(tool);
    }
  }
  for (auto& [tool, o] : out) {
    for (const Finding& f : o.candidates) {
      const auto& lines = reporters[{f.file, *f.type}];
      std::set<std::string> agree;
      for (auto it = lines.lower_bound(f.line - k);
           it != lines.end() && it->first <= f.line + k; ++it) {
        agree.insert(it->second.begin(), it->second.end());
      }
      const bool majority =
          static_cast<int>(agree.size()) >= thresholds.at(*f.type);
      (majority ? o.excluded : o.filtered).push_back(f);
    }
  }
  return out;
}

int EstimateFalsePositives(int filtered, int sampled, int confirmed) {
  if (confirmed < 0 || confirmed > sampled || sampled > filtered) {
    throw DomainError("need 0 <= confirmed <= sampled <= filtered, got " +
                      std::to_string(confirmed) + ", " + std::to_string(sampled) +
                      ", " + std::to_string(filtered));
  }
  if (sampled == 0) return 0;
  const long long num = static_cast<long long>(filtered) * confirmed;
  return static_cast<int>((2 * num + sampled) / (2LL * sampled));
}

std::vector<Finding> SampleForInspection(const std::vector<Finding>& filtered,
                                         int size, std::uint64_t seed) {
  if (size < 0) throw DomainError("sample size must be non-negative");
  if (filtered.size() <= static_cast<std::size_t>(size)) return filtered;
  std::mt19937_64 rng(seed);
  std::vector<Finding> out;
  std::sample(filtered.begin(), filtered.end(), std::back_inserter(out),
              static_cast<std::size_t>(size), rng);
  return out;
}

}  // namespace solbugsmith
