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

#include "solbugsmith/bug_pool.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "solbugsmith/error.h"
#include "solbugsmith/lexer.h"
#include "solbugsmith/parser.h"

namespace solbugsmith {
namespace {

using nlohmann::json;

constexpr std::string_view kProbeContract = "__PoolProbe";

std::vector<std::string> MemberNames(const std::vector<Member>& members) {
  std::vector<std::string> out;
  for (const Member& m : members) {
    if (!m.name.empty()) out.push_back(m.name);
  }
  return out;
}

// Parses an instantiated template as `form`; returns what it declares.
std::vector<std::string> CheckForm(const std::string& id, SnippetForm form,
                                   std::string_view text) {
  try {
    if (form == SnippetForm::kFunctionDefinition) {
      std::vector<Member> members = ParseMembers(text);
      if (members.empty()) throw PoolError(id, "template declares nothing");
      for (const Member& m : members) {
        if (m.kind == MemberKind::kOpaque ||
            m.kind == MemberKind::kConstructor) {
          throw PoolError(id, "template member outside the supported subset");
        }
      }
      return MemberNames(members);
    }
    std::vector<Stmt> stmts = ParseStatements(text);
    if (stmts.size() != 1) {
      throw PoolError(id, "template must be exactly one statement, got " +
                              std::to_string(stmts.size()));
    }
    const Stmt& s = stmts.front();
    if (s.opaque) throw PoolError(id, "template statement is opaque");
    if (form == SnippetForm::kNonFunctionBlock && !s.IsCompound()) {
      throw PoolError(id, "NonFunctionBlock template is not a block statement");
    }
    if (form == SnippetForm::kSimpleStatement && s.IsCompound()) {
      throw PoolError(id, "SimpleStatement template is a compound statement");
    }
    return s.declared;
  } catch (const LexError& e) {
    throw PoolError(id, std::string("template does not lex: ") + e.what());
  } catch (const ParseError& e) {
    throw PoolError(id, std::string("template does not parse: ") + e.what());
  }
}

std::vector<std::string> CheckContext(const std::string& id,
                                      std::string_view text) {
  try {
    std::vector<Member> members = ParseMembers(text);
    for (const Member& m : members) {
      if (m.kind != MemberKind::kStateVar) {
        throw PoolError(id, "required context may only declare state variables");
      }
    }
    return MemberNames(members);
  } catch (const LexError& e) {
    throw PoolError(id, std::string("context does not lex: ") + e.what());
  } catch (const ParseError& e) {
    throw PoolError(id, std::string("context does not parse: ") + e.what());
  }
}

// Names must change with the counter, or two instances would collide.
void CheckUniquified(const std::string& id, const std::vector<std::string>& a,
                     const std::vector<std::string>& b, std::string_view what) {
  std::set<std::string> first(a.begin(), a.end());
  for (const std::string& name : b) {
    if (first.count(name)) {
      throw PoolError(id, std::string(what) + " '" + name +
                              "' does not depend on the counter");
    }
  }
}

void ValidateSnippet(const BugSnippet& s) {
  if (s.id.empty()) throw PoolError("", "snippet without id");
  if (!s.required_context.empty() &&
      s.form != SnippetForm::kFunctionDefinition) {
    throw PoolError(s.id, "required context needs FunctionDefinition form");
  }
  if (s.required_context.empty() &&
      s.template_text.find("{C}") != std::string::npos) {
    throw PoolError(s.id, "{C} used without required context");
  }
  CheckUniquified(s.id, CheckForm(s.id, s.form, Instantiate(s.template_text, 0, 0)),
                  CheckForm(s.id, s.form, Instantiate(s.template_text, 1, 0)),
                  "declared identifier");
  std::string context;
  if (!s.required_context.empty()) {
    if (s.required_context.find("{N}") != std::string::npos) {
      throw PoolError(s.id, "required context must use {C}, not {N}");
    }
    CheckUniquified(s.id, CheckContext(s.id, Instantiate(s.required_context, 0, 0)),
                    CheckContext(s.id, Instantiate(s.required_context, 0, 1)),
                    "context identifier");
    context = Instantiate(s.required_context, 0, 0) + "\n";
  }

  // Whole-file probe: the declaration checker sees the snippet in place.
  std::string probe = "contract " + std::string(kProbeContract) + " {\n" +
                      context;
  std::string body = Instantiate(s.template_text, 0, 0);
  if (s.form == SnippetForm::kFunctionDefinition) {
    probe += body + "\n}\n";
  } else {
    probe += "function __probe() public {\n" + body + "\n}\n}\n";
  }
  try {
    Parse(probe);
  } catch (const Error& e) {
    throw PoolError(s.id, std::string("template rejected in context: ") +
                              e.what());
  }
}

std::vector<std::string> PatternTokens(const std::string& id,
                                       std::string_view text) {
  std::vector<Token> tokens;
  try {
    tokens = Tokenize(text);
  } catch (const LexError& e) {
    throw PoolError(id, std::string("pattern does not lex: ") + e.what());
  }
  std::vector<std::string> out;
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kComment || t.kind == TokenKind::kPragmaDirective) {
      throw PoolError(id, "pattern may not contain comments or pragmas");
    }
    out.push_back(t.text);
  }
  if (out.empty()) throw PoolError(id, "empty pattern");
  return out;
}

bool IsWordish(const std::string& t) {
  return !t.empty() && (std::isalnum(static_cast<unsigned char>(t.back())) ||
                        t.back() == '_' || t.back() == '$');
}

// Shortest text that re-lexes to `tokens`.
std::string JoinPattern(const std::vector<std::string>& tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty() && IsWordish(out) &&
        (std::isalnum(static_cast<unsigned char>(t.front())) ||
         t.front() == '_' || t.front() == '$')) {
      out += ' ';
    }
    out += t;
  }
  return out;
}

enum class Category { kType, kExpression, kNone };

Category Classify(const std::vector<std::string>& tokens) {
  if (tokens.size() == 1 && IsElementaryTypeName(tokens.front())) {
    return Category::kType;
  }
  try {
    std::vector<Stmt> stmts =
        ParseStatements("__probe = " + JoinPattern(tokens) + ";");
    if (stmts.size() == 1 && !stmts.front().opaque &&
        stmts.front().kind == StmtKind::kAssignment) {
      return Category::kExpression;
    }
  } catch (const Error&) {
  }
  return Category::kNone;
}

void ValidateTransform(const TransformPattern& p) {
  if (p.id.empty()) throw PoolError("", "transform without id");
  if (p.match.empty() || p.replace.empty()) {
    throw PoolError(p.id, "empty match or replacement");
  }
  if (p.match == p.replace) throw PoolError(p.id, "replacement equals match");
  Category m = Classify(p.match);
  Category r = Classify(p.replace);
  if (m == Category::kNone || m != r) {
    throw PoolError(p.id,
                    "match and replacement are not both types or both "
                    "expressions");
  }
}

void ValidateWeakening(const WeakeningRule& w) {
  if (w.id.empty()) throw PoolError("", "weakening rule without id");
  if (w.guard_calls.empty()) throw PoolError(w.id, "no guard calls");
  for (const std::string& c : w.guard_calls) {
    std::vector<std::string> t = PatternTokens(w.id, c);
    if (t.size() != 1 || IsKeyword(c) ||
        !(std::isalpha(static_cast<unsigned char>(c.front())) ||
          c.front() == '_')) {
      throw PoolError(w.id, "guard call '" + c + "' is not an identifier");
    }
  }
}

std::string Str(const json& obj, const char* key, const std::string& id) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw PoolError(id, std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

BugType TypeField(const json& obj, const std::string& id) {
  std::string name = Str(obj, "bugType", id);
  std::optional<BugType> t = ParseBugType(name);
  if (!t) throw PoolError(id, "unknown bug type '" + name + "'");
  return *t;
}

std::string IdField(const json& obj) {
  if (!obj.is_object()) throw PoolError("", "entry is not an object");
  return Str(obj, "id", "");
}

const json& ArrayField(const json& doc, const char* key) {
  static const json kEmpty = json::array();
  auto it = doc.find(key);
  if (it == doc.end()) return kEmpty;
  if (!it->is_array()) {
    throw PoolError("", std::string("'") + key + "' is not an array");
  }
  return *it;
}

}  // namespace

BugPool::BugPool() {
  for (BugType t : kAllBugTypes) {
    snippets_[t];
    transforms_[t];
    weakenings_[t];
  }
}

void BugPool::ClaimId(const std::string& id) {
  if (!ids_.insert(id).second) throw PoolError(id, "duplicate id");
}

void BugPool::AddSnippet(BugSnippet snippet) {
  ValidateSnippet(snippet);
  ClaimId(snippet.id);
  snippets_[snippet.bug_type].push_back(std::move(snippet));
}

void BugPool::AddTransform(TransformPattern pattern) {
  ValidateTransform(pattern);
  ClaimId(pattern.id);
  transforms_[pattern.bug_type].push_back(std::move(pattern));
}

void BugPool::AddWeakening(WeakeningRule rule) {
  ValidateWeakening(rule);
  ClaimId(rule.id);
  weakenings_[rule.bug_type].push_back(std::move(rule));
}

const std::vector<BugSnippet>& BugPool::snippets(BugType type) const {
  return snippets_.at(type);
}

const std::vector<TransformPattern>& BugPool::transforms(BugType type) const {
  return transforms_.at(type);
}

const std::vector<WeakeningRule>& BugPool::weakenings(BugType type) const {
  return weakenings_.at(type);
}

std::vector<const BugSnippet*> BugPool::SnippetsOf(BugType type,
                                                   SnippetForm form) const {
  std::vector<const BugSnippet*> out;
  for (const BugSnippet& s : snippets(type)) {
    if (s.form == form) out.push_back(&s);
  }
  return out;
}

const BugSnippet* BugPool::FindSnippet(std::string_view id) const {
  for (const auto& [type, list] : snippets_) {
    for (const BugSnippet& s : list) {
      if (s.id == id) return &s;
    }
  }
  return nullptr;
}

const TransformPattern* BugPool::FindTransform(std::string_view id) const {
  for (const auto& [type, list] : transforms_) {
    for (const TransformPattern& p : list) {
      if (p.id == id) return &p;
    }
  }
  return nullptr;
}

const WeakeningRule* BugPool::FindWeakening(std::string_view id) const {
  for (const auto& [type, list] : weakenings_) {
    for (const WeakeningRule& w : list) {
      if (w.id == id) return &w;
    }
  }
  return nullptr;
}

bool BugPool::empty() const { return ids_.empty(); }

std::string Instantiate(std::string_view text, int counter,
                        int context_counter) {
  const std::string n = std::to_string(counter);
  const std::string c = std::to_string(context_counter);
  std::string out;
  out.reserve(text.size() + 16);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 3, "{N}") == 0) {
      out += n;
      i += 2;
    } else if (text.compare(i, 3, "{C}") == 0) {
      out += c;
      i += 2;
    } else {
      out += text[i];
    }
  }
  return out;
}

std::vector<std::string> DeclaredNames(const BugSnippet& snippet,
                                       std::string_view instantiated) {
  return CheckForm(snippet.id, snippet.form, instantiated);
}

std::string SnippetBugId(const BugSnippet& snippet,
                         std::string_view instantiated, int counter) {
  std::vector<std::string> declared;
  if (snippet.form == SnippetForm::kFunctionDefinition) {
    declared = MemberNames(ParseMembers(instantiated));
  } else {
    ForEachStmt(ParseStatements(instantiated), [&](const Stmt& s) {
      declared.insert(declared.end(), s.declared.begin(), s.declared.end());
    });
  }
  if (!declared.empty()) return declared.front();
  std::string id;
  for (char c : snippet.id) {
    id += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  }
  return id + "_" + std::to_string(counter);
}

std::vector<std::string> ContextNames(const BugSnippet& snippet,
                                      std::string_view instantiated_context) {
  if (instantiated_context.empty()) return {};
  return CheckContext(snippet.id, instantiated_context);
}

BugPool LoadPool(std::string_view config_text) {
  BugPool pool;
  if (config_text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    return pool;
  }
  json doc;
  try {
    doc = json::parse(config_text);
  } catch (const json::parse_error& e) {
    throw PoolError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw PoolError("", "pool document is not an object");

  for (const json& e : ArrayField(doc, "snippets")) {
    const std::string id = IdField(e);
    BugSnippet s;
    s.id = id;
    s.bug_type = TypeField(e, id);
    std::string form = Str(e, "form", id);
    std::optional<SnippetForm> f = ParseSnippetForm(form);
    if (!f) throw PoolError(id, "unknown snippet form '" + form + "'");
    s.form = *f;
    s.template_text = Str(e, "template", id);
    if (e.contains("requiredContext")) {
      s.required_context = Str(e, "requiredContext", id);
    }
    pool.AddSnippet(std::move(s));
  }
  for (const json& e : ArrayField(doc, "transforms")) {
    const std::string id = IdField(e);
    TransformPattern p;
    p.id = id;
    p.bug_type = TypeField(e, id);
    p.match = PatternTokens(id, Str(e, "match", id));
    p.replace = PatternTokens(id, Str(e, "replace", id));
    pool.AddTransform(std::move(p));
  }
  for (const json& e : ArrayField(doc, "weakenings")) {
    const std::string id = IdField(e);
    WeakeningRule w;
    w.id = id;
    w.bug_type = TypeField(e, id);
    if (e.contains("action") &&
        Str(e, "action", id) != "commentOutStatement") {
      throw PoolError(id, "unsupported action '" + Str(e, "action", id) + "'");
    }
    if (e.contains("guardCalls")) {
      const json& calls = e.at("guardCalls");
      if (!calls.is_array()) throw PoolError(id, "'guardCalls' is not an array");
      w.guard_calls.clear();
      for (const json& c : calls) {
        if (!c.is_string()) throw PoolError(id, "guard call is not a string");
        w.guard_calls.push_back(c.get<std::string>());
      }
    }
    pool.AddWeakening(std::move(w));
  }
  return pool;
}

std::string SerializePool(const BugPool& pool) {
  json doc = {{"snippets", json::array()},
              {"transforms", json::array()},
              {"weakenings", json::array()}};
  for (BugType t : kAllBugTypes) {
    for (const BugSnippet& s : pool.snippets(t)) {
      json e = {{"id", s.id},
                {"bugType", BugTypeName(s.bug_type)},
                {"form", SnippetFormName(s.form)},
                {"template", s.template_text}};
      if (!s.required_context.empty()) {
        e["requiredContext"] = s.required_context;
      }
      doc["snippets"].push_back(std::move(e));
    }
    for (const TransformPattern& p : pool.transforms(t)) {
      doc["transforms"].push_back({{"id", p.id},
                                   {"bugType", BugTypeName(p.bug_type)},
                                   {"match", JoinPattern(p.match)},
                                   {"replace", JoinPattern(p.replace)}});
    }
    for (const WeakeningRule& w : pool.weakenings(t)) {
      doc["weakenings"].push_back({{"id", w.id},
                                   {"bugType", BugTypeName(w.bug_type)},
                                   {"guardCalls", w.guard_calls},
                                   {"action", "commentOutStatement"}});
    }
  }
  return doc.dump(2) + "\n";
}

}  // namespace solbugsmith
