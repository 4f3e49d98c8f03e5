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

#ifndef SOLBUGSMITH_INJECTOR_H_
#define SOLBUGSMITH_INJECTOR_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solbugsmith/bug_pool.h"
#include "solbugsmith/bug_type.h"
#include "solbugsmith/locator.h"
#include "solbugsmith/source.h"

namespace solbugsmith {

// Ground truth for one injected bug. Lines and bytes refer to the buggy
// output file.
struct BugLogEntry {
  std::string bug_id;
  BugType bug_type = BugType::kReentrancy;
  Approach approach = Approach::kFullSnippet;
  std::optional<std::string> snippet_id;
  std::string file;
  int start_line = 1;
  int end_line = 1;
  Span byte_span;

  friend bool operator==(const BugLogEntry&, const BugLogEntry&) = default;
};

using BugLog = std::vector<BugLogEntry>;

struct InjectionResult {
  std::string buggy_source;
  BugLog log;
  int counter_start = 0;
  // One past the last counter value consumed.
  int counter_end = 0;
};

// Applies every site of `profile` to `source`, which must be the text the
// profile was computed from (checked by content hash; StaleProfile
// otherwise). Each bug takes the next counter value from `counter_start`
// whose declared names are fresh. Snippet variants rotate per form.
// Throws EditConflict if two edits overlap.
InjectionResult InjectAll(std::string_view source,
                          const InjectionProfile& profile, const BugPool& pool,
                          int counter_start, const std::string& file = "");

// Single-site edits. The snippet text is inserted on lines of its own,
// indented like its neighbours.
std::string ApplySnippet(std::string_view source, const InjectionSite& site,
                         std::string_view snippet_text);
std::string ApplyTransformation(std::string_view source,
                                const InjectionSite& site,
                                const TransformPattern& pattern);
std::string ApplyWeakening(std::string_view source, const InjectionSite& site);

enum class BugLogFormat { kJson, kCsv };

// JSON: array of {bugId, bugType, approach, snippetId, file, startLine,
// endLine, byteStart, byteEnd}. CSV: the same columns with a header row.
std::string EmitBugLog(const BugLog& log, BugLogFormat format);
// Throws FormatError. The byte span's line numbers are restored from
// startLine/endLine, which always equal them.
BugLog ParseBugLog(std::string_view text, BugLogFormat format);

void WriteBugLog(const std::filesystem::path& path, const BugLog& log,
                 BugLogFormat format);
BugLog ReadBugLog(const std::filesystem::path& path);

}  // namespace solbugsmith

#endif  // SOLBUGSMITH_INJECTOR_H_
