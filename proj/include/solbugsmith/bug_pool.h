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

#ifndef SOLBUGSMITH_BUG_POOL_H_
#define SOLBUGSMITH_BUG_POOL_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "solbugsmith/bug_type.h"

namespace solbugsmith {

// A vulnerable code fragment. `{N}` in the template is replaced by the
// per-bug counter, so every name the fragment declares must carry it.
// `{C}` refers to names declared by `required_context`, which is inserted
// once per contract and shared by all instances of the snippet there.
struct BugSnippet {
  std::string id;
  BugType bug_type = BugType::kReentrancy;
  SnippetForm form = SnippetForm::kFunctionDefinition;
  std::string template_text;
  // State-variable declarations, only allowed for FunctionDefinition form.
  std::string required_context;

  friend bool operator==(const BugSnippet&, const BugSnippet&) = default;
};

// Token-level rewrite: `match` tokens become `replace` tokens.
struct TransformPattern {
  std::string id;
  BugType bug_type = BugType::kTxOrigin;
  std::vector<std::string> match;
  std::vector<std::string> replace;

  friend bool operator==(const TransformPattern&,
                         const TransformPattern&) = default;
};

// Disables a guard of the form `if (!x.send(..)) { revert(); }` (or the
// `require(x.send(..))` and else-branch equivalents) by commenting out the
// statement that aborts.
struct WeakeningRule {
  std::string id;
  BugType bug_type = BugType::kUnhandledException;
  // Member calls whose boolean result the guard tests.
  std::vector<std::string> guard_calls = {"send"};

  friend bool operator==(const WeakeningRule&,
                         const WeakeningRule&) = default;
};

class BugPool {
 public:
  // Every bug type is present, with empty sequences.
  BugPool();

  // Validates and stores; throws PoolError.
  void AddSnippet(BugSnippet snippet);
  void AddTransform(TransformPattern pattern);
  void AddWeakening(WeakeningRule rule);

  const std::vector<BugSnippet>& snippets(BugType type) const;
  const std::vector<TransformPattern>& transforms(BugType type) const;
  const std::vector<WeakeningRule>& weakenings(BugType type) const;

  // Snippets of `type` in `form`, in pool order.
  std::vector<const BugSnippet*> SnippetsOf(BugType type,
                                            SnippetForm form) const;
  const BugSnippet* FindSnippet(std::string_view id) const;
  const TransformPattern* FindTransform(std::string_view id) const;
  const WeakeningRule* FindWeakening(std::string_view id) const;

  bool empty() const;

  friend bool operator==(const BugPool&, const BugPool&) = default;

 private:
  void ClaimId(const std::string& id);

  std::map<BugType, std::vector<BugSnippet>> snippets_;
  std::map<BugType, std::vector<TransformPattern>> transforms_;
  std::map<BugType, std::vector<WeakeningRule>> weakenings_;
  std::set<std::string> ids_;
};

// Reads the JSON pool document
//   {"snippets": [...], "transforms": [...], "weakenings": [...]}.
// Every template is test-parsed with counter 0. Throws PoolError.
BugPool LoadPool(std::string_view config_text);
std::string SerializePool(const BugPool& pool);

// The bundled pool: at least five snippets per bug type, the transformation
// patterns for tx.origin and integer width, and the send-guard weakening.
const BugPool& DefaultPool();

// Substitutes `counter` for `{N}` and `context_counter` for `{C}`.
std::string Instantiate(std::string_view text, int counter,
                        int context_counter);
inline std::string Instantiate(const BugSnippet& snippet, int counter) {
  return Instantiate(snippet.template_text, counter, counter);
}

// Names the instantiated text introduces into its enclosing scope: member
// names for FunctionDefinition snippets and context declarations, names of
// top-level local declarations for statement snippets. Throws PoolError if
// the text does not parse as `form`.
std::vector<std::string> DeclaredNames(const BugSnippet& snippet,
                                       std::string_view instantiated);
// Identifier naming one injected instance: the first name the instance
// declares at any depth, else the snippet id plus the counter.
std::string SnippetBugId(const BugSnippet& snippet, std::string_view instantiated,
                         int counter);
std::vector<std::string> ContextNames(const BugSnippet& snippet,
                                      std::string_view instantiated_context);

}  // namespace solbugsmith

#endif  // SOLBUGSMITH_BUG_POOL_H_
