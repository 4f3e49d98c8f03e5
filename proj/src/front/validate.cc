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

#include <string>
#include <vector>

#include "solbugsmith/error.h"
#include "solbugsmith/parser.h"

namespace solbugsmith {
namespace {

void CheckBalance(const std::vector<Token>& tokens, const LineMap& lines,
                  std::vector<Diagnostic>& out) {
  std::vector<const Token*> open;
  for (const Token& t : tokens) {
    if (t.kind != TokenKind::kPunctuator) continue;
    if (t.text == "{" || t.text == "(" || t.text == "[") {
      open.push_back(&t);
    } else if (t.text == "}" || t.text == ")" || t.text == "]") {
      const char want = t.text == "}" ? '{' : t.text == ")" ? '(' : '[';
      if (open.empty() || open.back()->text[0] != want) {
        out.push_back({t.span.start_line, lines.ColumnOf(t.span.start),
                       "unbalanced '" + t.text + "'"});
        return;
      }
      open.pop_back();
    }
  }
  if (!open.empty()) {
    const Token& t = *open.back();
    out.push_back({t.span.start_line, lines.ColumnOf(t.span.start),
                   "unclosed '" + t.text + "'"});
  }
}

}  // namespace

std::vector<Diagnostic> Validate(std::string_view source) {
  std::vector<Diagnostic> out;
  LineMap lines(source);
  if (auto bad = FindInvalidUtf8(source); bad != std::string_view::npos) {
    out.push_back({lines.LineOf(bad), lines.ColumnOf(bad),
                   "source is not valid UTF-8"});
    return out;
  }
  std::vector<Token> tokens;
  try {
    tokens = Tokenize(source, lines);
  } catch (const LexError& e) {
    out.push_back({e.line(), e.column(), e.message()});
    return out;
  }
  CheckBalance(tokens, lines, out);
  if (!out.empty()) return out;
  try {
    Parse(source);
  } catch (const ParseError& e) {
    std::string message =
        e.expected() == "statement" || e.expected() == "fresh identifier"
            ? e.found()
            : "expected " + e.expected() + ", found " + e.found();
    out.push_back({e.line(), e.column(), std::move(message)});
    return out;
  }
  return out;
}

}  // namespace solbugsmith
