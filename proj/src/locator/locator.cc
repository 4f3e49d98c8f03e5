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

#include "solbugsmith/locator.h"

#include <algorithm>
#include <cstdio>
#include <tuple>

#include <nlohmann/json.hpp>

#include "solbugsmith/parser.h"

namespace solbugsmith {
namespace {

using Path = std::vector<std::string>;

std::string LineIndent(const SourceUnit& unit, std::size_t offset) {
  std::size_t i = unit.line_map.LineStart(unit.LineOf(offset));
  std::size_t j = i;
  while (j < unit.raw_text.size() &&
         (unit.raw_text[j] == ' ' || unit.raw_text[j] == '\t')) {
    ++j;
  }
  return unit.raw_text.substr(i, j - i);
}

std::string CallableLabel(const FunctionDef& fn) {
  switch (fn.kind) {
    case CallableKind::kConstructor:
      return "constructor";
    case CallableKind::kFallback:
      return "fallback";
    case CallableKind::kModifier:
      return "modifier " + fn.name;
    case CallableKind::kFunction:
      return "function " + fn.name;
  }
  return fn.name;
}

std::string StmtLabel(const Stmt& s) {
  return std::string(StmtKindName(s.kind)) + "@" +
         std::to_string(s.span.start_line);
}

Path Extend(Path p, std::string label) {
  p.push_back(std::move(label));
  return p;
}

// Non-comment tokens lying inside `span`.
std::vector<const Token*> TokensIn(const SourceUnit& unit, const Span& span) {
  auto first = std::lower_bound(
      unit.tokens.begin(), unit.tokens.end(), span.start,
      [](const Token& t, std::size_t off) { return t.span.start < off; });
  std::vector<const Token*> out;
  for (auto it = first; it != unit.tokens.end() && it->span.end <= span.end;
       ++it) {
    if (it->kind != TokenKind::kComment) out.push_back(&*it);
  }
  return out;
}

bool StartsWithWord(const SourceUnit& unit, const Stmt& s,
                    std::string_view word) {
  std::vector<const Token*> t = TokensIn(unit, s.span);
  return !t.empty() && t[0]->text == word;
}

// Statements after which nothing in the same block runs.
bool IsTerminator(const SourceUnit& unit, const Stmt& s) {
  if (s.kind == StmtKind::kReturnStmt || s.kind == StmtKind::kRevertStmt) {
    return true;
  }
  return s.kind == StmtKind::kExpressionStmt &&
         (StartsWithWord(unit, s, "break") ||
          StartsWithWord(unit, s, "continue"));
}

bool AcceptsStatementSites(const ContractDef& c, const FunctionDef& fn) {
  return c.kind == ContractKind::kContract && fn.body_span &&
         fn.mutability != Mutability::kView &&
         fn.mutability != Mutability::kPure;
}

class StatementWalker {
 public:
  StatementWalker(const SourceUnit& unit, SnippetForm form,
                  std::vector<InjectionSite>& out)
      : unit_(unit), form_(form), out_(out) {}

  // `open` is the offset just past the block's `{`.
  void VisitList(const std::vector<Stmt>& stmts, std::size_t open,
                 const Path& path) {
    const std::string indent =
        LineIndent(unit_, stmts.empty() ? open - 1 : stmts.front().span.start);
    Add(open, path, indent);
    for (const Stmt& s : stmts) {
      Descend(s, path);
      if (IsTerminator(unit_, s)) return;
      Add(s.span.end, path, indent);
    }
  }

 private:
  void Descend(const Stmt& s, const Path& path) {
    if (s.opaque || !s.IsCompound()) return;
    Path inner = Extend(path, StmtLabel(s));
    if (s.kind == StmtKind::kBlock) {
      VisitList(s.children, s.span.start + 1, inner);
      return;
    }
    for (const Stmt& arm : s.children) {
      if (arm.kind == StmtKind::kBlock && !arm.opaque) {
        VisitList(arm.children, arm.span.start + 1,
                  Extend(inner, StmtLabel(arm)));
      } else {
        Descend(arm, inner);
      }
    }
  }

  void Add(std::size_t offset, const Path& path, const std::string& indent) {
    InjectionSite site;
    site.kind = SiteKind::kSnippet;
    site.form = form_;
    site.offset = offset;
    site.indent = indent;
    site.enclosing = path;
    site.line = unit_.LineOf(offset);
    out_.push_back(std::move(site));
  }

  const SourceUnit& unit_;
  SnippetForm form_;
  std::vector<InjectionSite>& out_;
};

// Index of the `)` or `]` closing the group opened at `open`, or npos.
std::size_t MatchGroup(const std::vector<const Token*>& t, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < t.size(); ++i) {
    const std::string& x = t[i]->text;
    if (t[i]->kind != TokenKind::kPunctuator) continue;
    if (x == "(" || x == "[" || x == "{") ++depth;
    if (x == ")" || x == "]" || x == "}") {
      if (--depth == 0) return i;
    }
  }
  return std::string::npos;
}

// `t` is exactly `<receiver>.<call>(...)`, optionally parenthesized, where
// the receiver is a plain member/index/call chain.
bool IsGuardCall(std::vector<const Token*> t,
                 const std::vector<std::string>& calls) {
  while (t.size() >= 2 && t.front()->IsPunct("(") &&
         MatchGroup(t, 0) == t.size() - 1) {
    t = std::vector<const Token*>(t.begin() + 1, t.end() - 1);
  }
  if (t.size() < 5 || !t.back()->IsPunct(")")) return false;
  std::size_t call_open = std::string::npos;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Token& tok = *t[i];
    if (tok.kind == TokenKind::kPunctuator) {
      if (tok.text == "(" || tok.text == "[") {
        std::size_t close = MatchGroup(t, i);
        if (close == std::string::npos) return false;
        if (close == t.size() - 1) call_open = i;
        i = close;
        continue;
      }
      if (tok.text != ".") return false;
    } else if (tok.kind != TokenKind::kIdentifier &&
               tok.kind != TokenKind::kKeyword) {
      return false;
    }
  }
  if (call_open == std::string::npos || call_open < 3) return false;
  const Token& name = *t[call_open - 1];
  return t[call_open - 2]->IsPunct(".") &&
         name.kind == TokenKind::kIdentifier &&
         std::find(calls.begin(), calls.end(), name.text) != calls.end();
}

// Tokens of the first argument of `require(...)`.
std::vector<const Token*> FirstArgument(const std::vector<const Token*>& t) {
  if (t.size() < 3 || !t[1]->IsPunct("(")) return {};
  std::size_t close = MatchGroup(t, 1);
  if (close == std::string::npos) return {};
  std::vector<const Token*> arg;
  int depth = 0;
  for (std::size_t i = 2; i < close; ++i) {
    const Token& tok = *t[i];
    if (tok.kind == TokenKind::kPunctuator) {
      if (tok.text == "(" || tok.text == "[" || tok.text == "{") ++depth;
      if (tok.text == ")" || tok.text == "]" || tok.text == "}") --depth;
      if (depth == 0 && tok.text == ",") break;
    }
    arg.push_back(&tok);
  }
  return arg;
}

bool IsFailure(const SourceUnit& unit, const Stmt& s) {
  if (s.opaque) return false;
  if (s.kind == StmtKind::kRevertStmt) return true;
  if (s.kind != StmtKind::kRequireStmt &&
      s.kind != StmtKind::kExpressionStmt) {
    return false;
  }
  std::vector<const Token*> t = TokensIn(unit, s.span);
  if (t.empty() || (t[0]->text != "require" && t[0]->text != "assert")) {
    return false;
  }
  std::vector<const Token*> arg = FirstArgument(t);
  return arg.size() == 1 && arg[0]->IsKeyword("false");
}

// First aborting statement in a failure branch.
const Stmt* FailureIn(const SourceUnit& unit, const Stmt& arm, bool* bare) {
  if (arm.kind != StmtKind::kBlock) {
    *bare = true;
    return IsFailure(unit, arm) ? &arm : nullptr;
  }
  *bare = false;
  if (arm.opaque) return nullptr;
  for (const Stmt& s : arm.children) {
    if (IsFailure(unit, s)) return &s;
  }
  return nullptr;
}

class GuardFinder {
 public:
  GuardFinder(const SourceUnit& unit, const WeakeningRule& rule,
              std::vector<InjectionSite>& out)
      : unit_(unit), rule_(rule), out_(out) {}

  void Visit(const std::vector<Stmt>& stmts, const Path& path) {
    for (const Stmt& s : stmts) {
      if (s.opaque) continue;
      Check(s, path);
      if (s.IsCompound()) Visit(s.children, Extend(path, StmtLabel(s)));
    }
  }

 private:
  void Check(const Stmt& s, const Path& path) {
    if (s.kind == StmtKind::kRequireStmt) {
      std::vector<const Token*> arg = FirstArgument(TokensIn(unit_, s.span));
      if (!arg.empty() && IsGuardCall(arg, rule_.guard_calls)) {
        Add(s, s, GuardShape::kRequire, false, path);
      }
      return;
    }
    if (s.kind != StmtKind::kIfStmt || !s.header || s.children.empty()) {
      return;
    }
    std::vector<const Token*> cond = TokensIn(unit_, *s.header);
    bool bare = false;
    if (!cond.empty() && cond[0]->IsPunct("!") &&
        IsGuardCall({cond.begin() + 1, cond.end()}, rule_.guard_calls)) {
      if (const Stmt* f = FailureIn(unit_, s.children[0], &bare)) {
        Add(s, *f, GuardShape::kNegatedIf, bare, path);
      }
    } else if (s.children.size() == 2 &&
               IsGuardCall(cond, rule_.guard_calls)) {
      if (const Stmt* f = FailureIn(unit_, s.children[1], &bare)) {
        Add(s, *f, GuardShape::kElseIf, bare, path);
      }
    }
  }

  void Add(const Stmt& guard, const Stmt& failure, GuardShape shape,
           bool bare, const Path& path) {
    InjectionSite site;
    site.kind = SiteKind::kWeaken;
    site.ref = rule_.id;
    site.guard_span = guard.span;
    site.revert_span = failure.span;
    site.shape = shape;
    site.bare_arm = bare;
    site.enclosing = path;
    site.line = failure.span.start_line;
    out_.push_back(std::move(site));
  }

  const SourceUnit& unit_;
  const WeakeningRule& rule_;
  std::vector<InjectionSite>& out_;
};

void SortSites(std::vector<InjectionSite>& sites) {
  std::stable_sort(sites.begin(), sites.end(),
                   [](const InjectionSite& a, const InjectionSite& b) {
                     return std::make_tuple(a.Position(), a.kind, a.form) <
                            std::make_tuple(b.Position(), b.kind, b.form);
                   });
}

nlohmann::ordered_json SpanJson(const Span& s) {
  return {{"start", s.start},
          {"end", s.end},
          {"startLine", s.start_line},
          {"endLine", s.end_line}};
}

}  // namespace

std::string_view SiteKindName(SiteKind kind) {
  switch (kind) {
    case SiteKind::kSnippet:
      return "snippet";
    case SiteKind::kTransform:
      return "transform";
    case SiteKind::kWeaken:
      return "weaken";
  }
  return "";
}

std::string_view GuardShapeName(GuardShape shape) {
  switch (shape) {
    case GuardShape::kNegatedIf:
      return "negatedIf";
    case GuardShape::kElseIf:
      return "elseBranch";
    case GuardShape::kRequire:
      return "require";
  }
  return "";
}

std::size_t InjectionSite::Position() const {
  switch (kind) {
    case SiteKind::kSnippet:
      return offset;
    case SiteKind::kTransform:
      return match_span.start;
    case SiteKind::kWeaken:
      return revert_span.start;
  }
  return offset;
}

std::vector<InjectionSite> WalkForForm(const SourceUnit& unit,
                                       SnippetForm form) {
  std::vector<InjectionSite> out;
  for (const ContractDef& c : unit.contracts) {
    if (c.kind != ContractKind::kContract) continue;
    const Path contract_path = {"contract " + c.name};
    if (form == SnippetForm::kFunctionDefinition) {
      const std::string indent = LineIndent(
          unit, c.members.empty() ? c.body_span.start - 1
                                  : c.members.front().span.start);
      auto add = [&](std::size_t offset) {
        InjectionSite site;
        site.kind = SiteKind::kSnippet;
        site.form = form;
        site.offset = offset;
        site.indent = indent;
        site.enclosing = contract_path;
        site.line = unit.LineOf(offset);
        out.push_back(std::move(site));
      };
      add(c.body_span.start);
      for (const Member& m : c.members) add(m.span.end);
      continue;
    }
    StatementWalker walker(unit, form, out);
    for (const Member& m : c.members) {
      if (!m.function || !AcceptsStatementSites(c, *m.function)) continue;
      const FunctionDef& fn = *m.function;
      walker.VisitList(fn.statements, fn.body_span->start,
                       Extend(contract_path, CallableLabel(fn)));
    }
  }
  SortSites(out);
  return out;
}

std::vector<InjectionSite> FindSecurityMechanisms(const SourceUnit& unit,
                                                  const BugPool& pool,
                                                  BugType type) {
  std::vector<InjectionSite> out;
  for (const WeakeningRule& rule : pool.weakenings(type)) {
    GuardFinder finder(unit, rule, out);
    for (const ContractDef& c : unit.contracts) {
      if (c.kind != ContractKind::kContract) continue;
      for (const Member& m : c.members) {
        if (!m.function || !m.function->body_span) continue;
        finder.Visit(m.function->statements,
                     {"contract " + c.name, CallableLabel(*m.function)});
      }
    }
  }
  SortSites(out);
  // A guard claimed by an earlier rule is not weakened twice.
  out.erase(std::unique(out.begin(), out.end(),
                        [](const InjectionSite& a, const InjectionSite& b) {
                          return a.revert_span == b.revert_span;
                        }),
            out.end());
  return out;
}

std::vector<InjectionSite> FindTransformableCode(
    const SourceUnit& unit, const std::vector<TransformPattern>& patterns) {
  std::vector<InjectionSite> out;
  if (patterns.empty()) return out;

  // Byte ranges eligible for matching, with the contract each belongs to.
  struct Region {
    Span span;
    std::string contract;
  };
  std::vector<Region> allowed;
  std::vector<Span> opaque;
  for (const ContractDef& c : unit.contracts) {
    if (c.kind != ContractKind::kContract) continue;
    allowed.push_back({c.body_span, c.name});
    for (const Member& m : c.members) {
      if (m.kind == MemberKind::kOpaque) opaque.push_back(m.span);
      if (!m.function) continue;
      ForEachStmt(m.function->statements, [&](const Stmt& s) {
        if (s.opaque) opaque.push_back(s.span);
      });
    }
  }

  std::vector<const Token*> toks;
  std::vector<std::string> owner;
  for (const Token& t : unit.tokens) {
    if (t.kind == TokenKind::kComment) continue;
    auto region = std::find_if(allowed.begin(), allowed.end(),
                               [&](const Region& r) {
                                 return r.span.Contains(t.span);
                               });
    if (region == allowed.end()) continue;
    bool hidden = std::any_of(opaque.begin(), opaque.end(),
                              [&](const Span& o) { return o.Contains(t.span); });
    if (hidden) continue;
    toks.push_back(&t);
    owner.push_back(region->contract);
  }

  for (std::size_t i = 0; i < toks.size();) {
    const TransformPattern* best = nullptr;
    for (const TransformPattern& p : patterns) {
      if (i + p.match.size() > toks.size()) continue;
      if (best && p.match.size() <= best->match.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < p.match.size() && ok; ++k) {
        ok = toks[i + k]->text == p.match[k] &&
             toks[i + k]->kind != TokenKind::kStringLiteral &&
             owner[i + k] == owner[i];
      }
      if (ok) best = &p;
    }
    if (!best) {
      ++i;
      continue;
    }
    const std::size_t last = i + best->match.size() - 1;
    InjectionSite site;
    site.kind = SiteKind::kTransform;
    site.ref = best->id;
    site.match_span = unit.line_map.MakeSpan(toks[i]->span.start,
                                             toks[last]->span.end);
    site.enclosing = {"contract " + owner[i]};
    site.line = site.match_span.start_line;
    out.push_back(std::move(site));
    i = last + 1;
  }
  return out;
}

InjectionProfile FindAllPotentialLocations(const SourceUnit& unit, BugType type,
                                           const BugPool& pool,
                                           std::string source_id) {
  InjectionProfile profile;
  profile.source_id = std::move(source_id);
  profile.bug_type = type;
  profile.source_hash = ContentHash(unit.raw_text);
  for (SnippetForm form : kAllSnippetForms) {
    if (pool.SnippetsOf(type, form).empty()) continue;
    std::vector<InjectionSite> sites = WalkForForm(unit, form);
    profile.sites.insert(profile.sites.end(), sites.begin(), sites.end());
  }
  std::vector<InjectionSite> weak = FindSecurityMechanisms(unit, pool, type);
  profile.sites.insert(profile.sites.end(), weak.begin(), weak.end());
  std::vector<InjectionSite> xf =
      FindTransformableCode(unit, pool.transforms(type));
  profile.sites.insert(profile.sites.end(), xf.begin(), xf.end());
  SortSites(profile.sites);
  return profile;
}

std::string ProfileToJson(const InjectionProfile& profile) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(profile.source_hash));
  nlohmann::ordered_json doc = {{"sourceId", profile.source_id},
                                {"bugType", BugTypeName(profile.bug_type)},
                                {"contentHash", hash},
                                {"sites", nlohmann::ordered_json::array()}};
  for (const InjectionSite& s : profile.sites) {
    nlohmann::ordered_json j = {{"kind", SiteKindName(s.kind)}};
    switch (s.kind) {
      case SiteKind::kSnippet:
        j["form"] = SnippetFormName(s.form);
        j["offset"] = s.offset;
        break;
      case SiteKind::kTransform:
        j["pattern"] = s.ref;
        j["span"] = SpanJson(s.match_span);
        break;
      case SiteKind::kWeaken:
        j["rule"] = s.ref;
        j["shape"] = GuardShapeName(s.shape);
        j["span"] = SpanJson(s.guard_span);
        j["revertSpan"] = SpanJson(s.revert_span);
        break;
    }
    j["line"] = s.line;
    j["enclosing"] = s.enclosing;
    doc["sites"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace solbugsmith
