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

#include "solbugsmith/lexer.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

#include "solbugsmith/error.h"

namespace solbugsmith {
namespace {

const std::unordered_set<std::string_view>& Keywords() {
  static const std::unordered_set<std::string_view> kKeywords = {
      "abstract", "anonymous", "assembly", "break",     "calldata",
      "catch",    "constant",  "constructor", "continue", "contract",
      "delete",   "do",        "else",     "emit",      "enum",
      "event",    "external",  "false",    "for",       "function",
      "if",       "immutable", "import",   "indexed",   "interface",
      "internal", "is",        "library",  "mapping",   "memory",
      "modifier", "new",       "override", "payable",   "private",
      "public",   "pure",      "return",   "returns",   "storage",
      "struct",   "throw",     "true",     "try",       "unchecked",
      "using",    "var",       "view",     "virtual",   "while",
      // Denominations.
      "wei", "gwei", "szabo", "finney", "ether", "seconds", "minutes",
      "hours", "days", "weeks", "years"};
  return kKeywords;
}

// Longest first so that the scan below can take the first prefix match.
constexpr std::array<std::string_view, 36> kPunctuators = {
    ">>>=", ">>>", "<<=", ">>=", "**", "=>", "==", "!=", "<=",
    ">=",   "&&",  "||",  "++",  "--", "+=", "-=", "*=", "/=",
    "%=",   "|=",  "&=",  "^=",  "<<", ">>", ":=", "->", "{",
    "}",    "(",   ")",   "[",   "]",  ";",  ",",  ".",  "?"};
constexpr std::string_view kSinglePunct = ":=+-*/%<>!~&|^";

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

class Lexer {
 public:
  Lexer(std::string_view src, const LineMap& lines) : src_(src), lines_(lines) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    while (true) {
      SkipSpace();
      if (pos_ >= src_.size()) break;
      out.push_back(Next());
    }
    return out;
  }

 private:
  [[noreturn]] void Fail(std::size_t at, const std::string& message) const {
    throw LexError(lines_.LineOf(at), lines_.ColumnOf(at), message);
  }

  void SkipSpace() {
    while (pos_ < src_.size() && IsSpace(src_[pos_])) ++pos_;
  }

  Token Make(TokenKind kind, std::size_t start) {
    return Token{kind, std::string(src_.substr(start, pos_ - start)),
                 lines_.MakeSpan(start, pos_)};
  }

  Token Next() {
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (c == '/' && Peek(1) == '/') {
      while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r') {
        ++pos_;
      }
      return Make(TokenKind::kComment, start);
    }
    if (c == '/' && Peek(1) == '*') {
      auto close = src_.find("*/", pos_ + 2);
      if (close == std::string_view::npos) Fail(start, "unterminated comment");
      pos_ = close + 2;
      return Make(TokenKind::kComment, start);
    }
    if (c == '"' || c == '\'') {
      ScanString();
      return Make(TokenKind::kStringLiteral, start);
    }
    if (IsIdentStart(c)) {
      while (pos_ < src_.size() && IsIdentChar(src_[pos_])) ++pos_;
      std::string_view word = src_.substr(start, pos_ - start);
      if ((word == "hex" || word == "unicode") && pos_ < src_.size() &&
          (src_[pos_] == '"' || src_[pos_] == '\'')) {
        ScanString();
        return Make(TokenKind::kStringLiteral, start);
      }
      if (word == "pragma") {
        auto semi = src_.find(';', pos_);
        if (semi == std::string_view::npos) {
          Fail(start, "unterminated pragma directive");
        }
        pos_ = semi + 1;
        return Make(TokenKind::kPragmaDirective, start);
      }
      if (IsKeyword(word)) return Make(TokenKind::kKeyword, start);
      return Make(TokenKind::kIdentifier, start);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(Peek(1))))) {
      ScanNumber();
      return Make(TokenKind::kNumberLiteral, start);
    }
    for (std::string_view p : kPunctuators) {
      if (src_.substr(pos_, p.size()) == p) {
        pos_ += p.size();
        return Make(TokenKind::kPunctuator, start);
      }
    }
    if (kSinglePunct.find(c) != std::string_view::npos) {
      ++pos_;
      return Make(TokenKind::kPunctuator, start);
    }
    Fail(start, std::string("illegal character '") +
                    (static_cast<unsigned char>(c) < 0x80
                         ? std::string(1, c)
                         : std::string("\\x") + HexByte(c)) +
                    "'");
  }

  static std::string HexByte(char c) {
    static constexpr char kHex[] = "0123456789abcdef";
    auto u = static_cast<unsigned char>(c);
    return {kHex[u >> 4], kHex[u & 0xF]};
  }

  char Peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void ScanString() {
    const std::size_t start = pos_;
    const char quote = src_[pos_++];
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n' || src_[pos_] == '\r') {
        Fail(start, "unterminated string literal");
      }
      char c = src_[pos_++];
      if (c == '\\') {
        if (pos_ >= src_.size()) Fail(start, "unterminated string literal");
        ++pos_;
      } else if (c == quote) {
        return;
      }
    }
  }

  void ScanNumber() {
    const std::size_t start = pos_;
    if (src_[pos_] == '0' && (Peek(1) == 'x' || Peek(1) == 'X')) {
      pos_ += 2;
      while (pos_ < src_.size() &&
             (std::isxdigit(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        ++pos_;
      }
    } else {
      auto digits = [&] {
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_')) {
          ++pos_;
        }
      };
      digits();
      if (pos_ < src_.size() && src_[pos_] == '.' &&
          std::isdigit(static_cast<unsigned char>(Peek(1)))) {
        ++pos_;
        digits();
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t save = pos_;
        ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '-') ++pos_;
        if (pos_ < src_.size() &&
            std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          digits();
        } else {
          pos_ = save;
        }
      }
    }
    if (pos_ < src_.size() && IsIdentChar(src_[pos_])) {
      Fail(start, "invalid number literal");
    }
  }

  std::string_view src_;
  const LineMap& lines_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdentifier:
      return "identifier";
    case TokenKind::kKeyword:
      return "keyword";
    case TokenKind::kNumberLiteral:
      return "numberLiteral";
    case TokenKind::kStringLiteral:
      return "stringLiteral";
    case TokenKind::kPunctuator:
      return "punctuator";
    case TokenKind::kComment:
      return "comment";
    case TokenKind::kPragmaDirective:
      return "pragmaDirective";
  }
  return "unknown";
}

bool IsElementaryTypeName(std::string_view word) {
  if (word == "address" || word == "bool" || word == "string" ||
      word == "bytes" || word == "byte" || word == "uint" || word == "int" ||
      word == "fixed" || word == "ufixed") {
    return true;
  }
  auto sized = [&](std::string_view prefix, int lo, int hi, int step) {
    if (word.size() <= prefix.size() || word.substr(0, prefix.size()) != prefix)
      return false;
    std::string_view rest = word.substr(prefix.size());
    if (!AllDigits(rest) || rest[0] == '0') return false;
    int n = std::stoi(std::string(rest));
    return n >= lo && n <= hi && n % step == 0;
  };
  return sized("uint", 8, 256, 8) || sized("int", 8, 256, 8) ||
         sized("bytes", 1, 32, 1);
}

bool IsKeyword(std::string_view word) {
  return Keywords().count(word) > 0 || IsElementaryTypeName(word);
}

std::vector<Token> Tokenize(std::string_view source, const LineMap& lines) {
  if (auto bad = FindInvalidUtf8(source); bad != std::string_view::npos) {
    throw LexError(lines.LineOf(bad), lines.ColumnOf(bad),
                   "invalid UTF-8 byte sequence (only UTF-8 is accepted)");
  }
  return Lexer(source, lines).Run();
}

std::vector<Token> Tokenize(std::string_view source) {
  LineMap lines(source);
  return Tokenize(source, lines);
}

std::string Reassemble(std::string_view source,
                       const std::vector<Token>& tokens) {
  std::string out;
  out.reserve(source.size());
  std::size_t prev = 0;
  for (const Token& t : tokens) {
    out.append(source.substr(prev, t.span.start - prev));
    out.append(t.text);
    prev = t.span.end;
  }
  out.append(source.substr(prev));
  return out;
}

}  // namespace solbugsmith
