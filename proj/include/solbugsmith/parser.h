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

#ifndef SOLBUGSMITH_PARSER_H_
#define SOLBUGSMITH_PARSER_H_

#include <string>
#include <string_view>
#include <vector>

#include "solbugsmith/ast.h"

namespace solbugsmith {

// Parses the supported Solidity subset. Structs, enums, `using` directives,
// inline assembly and similar brace- or semicolon-delimited constructs are
// kept as opaque nodes. Throws LexError or ParseError.
SourceUnit Parse(std::string_view source);

// Parses `text` as the body of a function: the statements it contains.
std::vector<Stmt> ParseStatements(std::string_view text);

// Parses `text` as contract members.
std::vector<Member> ParseMembers(std::string_view text);

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;
};

// Empty result means the source is acceptable: it parses, its delimiters
// balance, it is UTF-8, and no declaration collides with another in the
// same scope.
std::vector<Diagnostic> Validate(std::string_view source);

// Walks every statement under `stmts` depth-first, parents first.
template <typename Fn>
void ForEachStmt(const std::vector<Stmt>& stmts, Fn&& fn) {
  for (const Stmt& s : stmts) {
    fn(s);
    ForEachStmt(s.children, fn);
  }
}

// Identifiers appearing anywhere in the token stream.
std::vector<std::string> CollectIdentifiers(const std::vector<Token>& tokens);

}  // namespace solbugsmith

#endif  // SOLBUGSMITH_PARSER_H_
