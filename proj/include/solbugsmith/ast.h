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

#ifndef SOLBUGSMITH_AST_H_
#define SOLBUGSMITH_AST_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solbugsmith/lexer.h"
#include "solbugsmith/source.h"

namespace solbugsmith {

enum class StmtKind {
  kLocalVarDecl,
  kAssignment,
  kExpressionStmt,
  kIfStmt,
  kForStmt,
  kWhileStmt,
  kReturnStmt,
  kRequireStmt,
  kRevertStmt,
  kEmitStmt,
  kBlock,
};

std::string_view StmtKindName(StmtKind kind);

struct Stmt {
  StmtKind kind = StmtKind::kExpressionStmt;
  Span span;
  // if: [then, else?]; for/while: [body]; block: its statements.
  std::vector<Stmt> children;
  // Parenthesized header of if/for/while, parentheses excluded.
  std::optional<Span> header;
  // Outside the grammar subset; kept with its span but never descended into.
  bool opaque = false;
  // Names introduced by a local declaration, or by a for-loop initializer.
  std::vector<std::string> declared;
  std::string text;

  bool IsCompound() const {
    return kind == StmtKind::kIfStmt || kind == StmtKind::kForStmt ||
           kind == StmtKind::kWhileStmt || kind == StmtKind::kBlock;
  }
};

enum class Visibility { kPublic, kPrivate, kInternal, kExternal };
enum class Mutability { kNone, kPayable, kView, kPure };

struct Param {
  std::string type;
  std::string name;
};

enum class CallableKind { kFunction, kConstructor, kModifier, kFallback };

struct FunctionDef {
  CallableKind kind = CallableKind::kFunction;
  std::string name;
  std::vector<Param> params;
  Visibility visibility = Visibility::kPublic;
  Mutability mutability = Mutability::kNone;
  std::optional<std::vector<Param>> returns;
  std::vector<std::string> modifiers;
  // Between the braces; absent for declarations ending in ';'.
  std::optional<Span> body_span;
  std::vector<Stmt> statements;
};

enum class MemberKind {
  kStateVar,
  kFunction,
  kModifier,
  kConstructor,
  kEvent,
  kOpaque,
};

std::string_view MemberKindName(MemberKind kind);

struct Member {
  MemberKind kind = MemberKind::kOpaque;
  Span span;
  std::string name;
  // State variables.
  std::string type;
  // Functions, modifiers and constructors.
  std::optional<FunctionDef> function;
  // Events.
  std::vector<Param> event_params;
};

enum class ContractKind { kContract, kInterface, kLibrary };

struct ContractDef {
  ContractKind kind = ContractKind::kContract;
  bool is_abstract = false;
  std::string name;
  std::vector<std::string> bases;
  Span span;
  // Between the braces.
  Span body_span;
  std::vector<Member> members;
};

struct SourceUnit {
  std::optional<std::string> pragma;
  std::vector<ContractDef> contracts;
  // Imports and other top-level items outside the subset.
  std::vector<Span> opaque_items;
  LineMap line_map;
  std::string raw_text;
  // Full lossless stream, comments included.
  std::vector<Token> tokens;

  int LineOf(std::size_t offset) const { return line_map.LineOf(offset); }
};

// 1-based line containing `offset`; throws OutOfRange.
inline int LineOf(const SourceUnit& unit, std::size_t offset) {
  return unit.LineOf(offset);
}

}  // namespace solbugsmith

#endif  // SOLBUGSMITH_AST_H_
