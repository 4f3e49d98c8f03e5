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

#ifndef SOLBUGSMITH_LEXER_H_
#define SOLBUGSMITH_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

#include "solbugsmith/source.h"

namespace solbugsmith {

enum class TokenKind {
  kIdentifier,
  kKeyword,
  kNumberLiteral,
  kStringLiteral,
  kPunctuator,
  kComment,
  // `pragma ... ;` kept whole, terminator included.
  kPragmaDirective,
};

std::string_view TokenKindName(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;
  Span span;

  bool Is(TokenKind k, std::string_view t) const {
    return kind == k && text == t;
  }
  bool IsPunct(std::string_view t) const {
    return Is(TokenKind::kPunctuator, t);
  }
  bool IsKeyword(std::string_view t) const {
    return Is(TokenKind::kKeyword, t);
  }
};

// Lossless tokenization: only whitespace separates consecutive tokens, and
// comments are kept. Throws LexError on unterminated strings or comments,
// illegal characters and malformed UTF-8.
std::vector<Token> Tokenize(std::string_view source);

// Same, reusing a line map the caller already built for `source`.
std::vector<Token> Tokenize(std::string_view source, const LineMap& lines);

bool IsKeyword(std::string_view word);
// Elementary type names: uintN, intN, bytesN, bytes, bool, address, string...
bool IsElementaryTypeName(std::string_view word);

// Re-joins `tokens` using the inter-token whitespace of `source`.
std::string Reassemble(std::string_view source,
                       const std::vector<Token>& tokens);

}  // namespace solbugsmith

#endif  // SOLBUGSMITH_LEXER_H_
