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

#include <sstream>

#include "solbugsmith/evaluator.h"

namespace solbugsmith {
namespace {

const FNResult* FindFN(const EvaluationResult& r, const std::string& tool,
                       BugType type) {
  for (const FNResult& x : r.fn) {
    if (x.tool == tool && x.bug_type == type) return &x;
  }
  return nullptr;
}

const FPResult* FindFP(const EvaluationResult& r, const std::string& tool,
                       BugType type) {
  for (const FPResult& x : r.fp) {
    if (x.tool == tool && x.bug_type == type) return &x;
  }
  return nullptr;
}

std::string Row(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const std::string& c : cells) out += " " + c + " |";
  return out + "\n";
}

std::string Rule(std::size_t columns) {
  std::string out = "|";
  for (std::size_t i = 0; i < columns; ++i) out += "---|";
  return out + "\n";
}

std::string Optional(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

std::string FNCell(const FNResult* result, bool in_scope) {
  if (!in_scope) return "NA";
  if (!result || result->injected == 0) return "-";
  if (result->undetected() == 0) return "✓";
  return std::to_string(result->undetected()) + " (" +
         std::to_string(result->unreported) + ")";
}

ReportDocument RenderTables(const EvaluationResult& result) {
  ReportDocument doc;

  std::vector<std::string> header = {"Bug type", "Injected"};
  for (const ToolCapabilities& t : result.tools) header.push_back(t.tool);
  std::string md = Row(header) + Rule(header.size());
  for (BugType type : kAllBugTypes) {
    int injected = 0;
    if (auto it = result.injected.find(type); it != result.injected.end()) {
      injected = it->second;
    } else {
      for (const FNResult& r : result.fn) {
        if (r.bug_type == type) injected = std::max(injected, r.injected);
      }
    }
    std::vector<std::string> row = {std::string(BugTypeName(type)),
                                    std::to_string(injected)};
    for (const ToolCapabilities& t : result.tools) {
      row.push_back(FNCell(FindFN(result, t.tool, type), t.detects.count(type) > 0));
    }
    md += Row(row);
  }
  doc.fn_markdown = std::move(md);

  header = {"Bug type", "Threshold"};
  for (const ToolCapabilities& t : result.tools) {
    header.push_back(t.tool + " Reported");
    header.push_back(t.tool + " FIL");
    header.push_back(t.tool + " FP");
  }
  md = Row(header) + Rule(header.size());
  for (BugType type : kAllBugTypes) {
    auto th = result.thresholds.find(type);
    std::vector<std::string> row = {
        std::string(BugTypeName(type)),
        th == result.thresholds.end() ? "" : std::to_string(th->second)};
    for (const ToolCapabilities& t : result.tools) {
      const FPResult* r = FindFP(result, t.tool, type);
      if (!t.detects.count(type)) {
        row.insert(row.end(), {"NA", "NA", "NA"});
        continue;
      }
      if (!r) {
        row.insert(row.end(), {"", "", ""});
        continue;
      }
      row.push_back(std::to_string(r->reported));
      row.push_back(std::to_string(r->filtered));
      row.push_back(r->filtered == 0 ? "-"
                    : r->estimated_fp ? std::to_string(*r->estimated_fp)
                                      : "?");
    }
    md += Row(row);
  }
  std::vector<std::string> misc = {std::string(kMiscellaneous), ""};
  for (const ToolCapabilities& t : result.tools) {
    auto it = result.miscellaneous.find(t.tool);
    misc.push_back(it == result.miscellaneous.end() ? "0"
                                                    : std::to_string(it->second));
    misc.insert(misc.end(), {"", ""});
  }
  md += Row(misc);
  doc.fp_markdown = std::move(md);

  std::ostringstream fn;
  fn << "tool,bugType,injected,correctlyDetected,misidentifiedType,unreported,"
        "cell\n";
  for (const FNResult& r : result.fn) {
    fn << r.tool << "," << BugTypeName(r.bug_type) << "," << r.injected << ","
       << r.correctly_detected << "," << r.misidentified_type << ","
       << r.unreported << "," << FNCell(&r, true) << "\n";
  }
  doc.fn_csv = fn.str();

  std::ostringstream fp;
  fp << "tool,bugType,threshold,reported,excludedByMajority,filtered,sampled,"
        "confirmedInSample,estimatedFP\n";
  for (const FPResult& r : result.fp) {
    auto th = result.thresholds.find(r.bug_type);
    fp << r.tool << "," << BugTypeName(r.bug_type) << ","
       << (th == result.thresholds.end() ? "" : std::to_string(th->second)) << ","
       << r.reported << "," << r.excluded_by_majority << "," << r.filtered << ","
       << r.sampled << "," << Optional(r.confirmed_in_sample) << ","
       << Optional(r.estimated_fp) << "\n";
  }
  doc.fp_csv = fp.str();
  return doc;
}

}  // namespace solbugsmith
