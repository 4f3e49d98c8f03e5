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

#ifndef SOLBUGSMITH_LOCATOR_H_
#define SOLBUGSMITH_LOCATOR_H_

#include <cstdint>
#include <string>
#include <vector>

#include "solbugsmith/ast.h"
#include "solbugsmith/bug_pool.h"
#include "solbugsmith/bug_type.h"
#include "solbugsmith/source.h"

namespace solbugsmith {

enum class SiteKind { kSnippet, kTransform, kWeaken };

// How a weakened guard tests the send result.
enum class GuardShape {
  kNegatedIf,  // if (!x.send(v)) { revert(); }
  kElseIf,     // if (x.send(v)) { ... } else { revert(); }
  kRequire,    // require(x.send(v));
};

std::string_view SiteKindName(SiteKind kind);
std::string_view GuardShapeName(GuardShape shape);

struct InjectionSite {
  SiteKind kind = SiteKind::kSnippet;

  // kSnippet: insertion point, always on a statement or member boundary.
  SnippetForm form = SnippetForm::kFunctionDefinition;
  std::size_t offset = 0;
  // Leading whitespace of the enclosing list's first element (or of its
  // opening line when empty); inserted text is indented to match.
  std::string indent;

  // kTransform: pattern id and the exact matched range.
  // kWeaken: rule id, the guarding statement, and the aborting statement
  // inside it.
  std::string ref;
  Span match_span;
  Span guard_span;
  Span revert_span;
  GuardShape shape = GuardShape::kNegatedIf;
  // kWeaken: the aborting statement is a bare if/else arm, not inside a block.
  bool bare_arm = false;

  // Contract, callable and statements leading to the site.
  std::vector<std::string> enclosing;
  int line = 1;

  // Sort key: the first byte the site touches.
  std::size_t Position() const;
};

struct InjectionProfile {
  std::string source_id;
  BugType bug_type = BugType::kReentrancy;
  // ContentHash of the source the profile was computed from.
  std::uint64_t source_hash = 0;
  std::vector<InjectionSite> sites;
};

// Every place a bug of `type` can go: snippet sites for each form the pool
// has snippets in, guarded sends the pool's weakening rules apply to, and
// matches of its transformation patterns. Sorted by position, then kind and
// form.
InjectionProfile FindAllPotentialLocations(const SourceUnit& unit, BugType type,
                                           const BugPool& pool,
                                           std::string source_id = "");

// Statement forms: after the `{` of each statement block in a live,
// state-mutable body of a contract, and after each statement, up to the
// first return/revert/throw/break/continue. FunctionDefinition: after the
// `{` of each contract body and after each member. Interfaces and libraries
// get no sites.
std::vector<InjectionSite> WalkForForm(const SourceUnit& unit,
                                       SnippetForm form);

std::vector<InjectionSite> FindSecurityMechanisms(const SourceUnit& unit,
                                                  const BugPool& pool,
                                                  BugType type);

// Leftmost-longest token matches, comments skipped, opaque regions and
// non-contract units excluded.
std::vector<InjectionSite> FindTransformableCode(
    const SourceUnit& unit, const std::vector<TransformPattern>& patterns);

// {sourceId, bugType, contentHash, sites: [{kind, offset | span, line, ...}]}
std::string ProfileToJson(const InjectionProfile& profile);

}  // namespace solbugsmith

#endif  // SOLBUGSMITH_LOCATOR_H_
