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

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "solbugsmith/error.h"
#include "test_util.h"

namespace solbugsmith {
namespace {

using testing::CorpusFiles;
using testing::Fixture;
using testing::ReadFile;

// Token texts must equal their source slices and only whitespace may sit
// between them.
void CheckLossless(const std::string& src) {
  std::vector<Token> toks = Tokenize(src);
  std::size_t prev = 0;
  for (const Token& t : toks) {
    REQUIRE(t.span.start >= prev);
    for (std::size_t i = prev; i < t.span.start; ++i) {
      REQUIRE(std::string(" \t\r\n\f\v").find(src[i]) != std::string::npos);
    }
    REQUIRE(src.substr(t.span.start, t.span.size()) == t.text);
    prev = t.span.end;
  }
  for (std::size_t i = prev; i < src.size(); ++i) {
    REQUIRE(std::string(" \t\r\n\f\v").find(src[i]) != std::string::npos);
  }
  CHECK(Reassemble(src, toks) == src);
}

TEST_CASE("empty input yields no tokens") { CHECK(Tokenize("").empty()); }

TEST_CASE("minimal contract") {
  auto toks = Tokenize("contract A {}");
  REQUIRE(toks.size() == 4);
  CHECK(toks[0].Is(TokenKind::kKeyword, "contract"));
  CHECK(toks[1].Is(TokenKind::kIdentifier, "A"));
  CHECK(toks[2].IsPunct("{"));
  CHECK(toks[3].IsPunct("}"));
  CHECK(toks[3].span.start == 12);
}

TEST_CASE("running example keywords and identifiers") {
  auto toks = Tokenize(Fixture("egame.sol"));
  int constructors = 0, functions = 0, block = 0, timestamp = 0;
  for (const Token& t : toks) {
    constructors += t.IsKeyword("constructor");
    functions += t.IsKeyword("function");
    block += t.Is(TokenKind::kIdentifier, "block");
    timestamp += t.Is(TokenKind::kIdentifier, "timestamp");
  }
  CHECK(constructors == 1);
  CHECK(functions == 2);
  CHECK(block == 2);
  CHECK(timestamp == 2);
  CHECK(toks.front().kind == TokenKind::kPragmaDirective);
  CHECK(toks.front().text == "pragma solidity >=0.4.21 <0.6.0;");
}

TEST_CASE("comments, literals and multi-char punctuators") {
  std::string src =
      "x >>= 2; // tail\n/* block\n comment */ y = 0x1F_ff + 1.5e3 ether;"
      " s = \"a\\\"b\"; h = hex\"00ff\"; a => b; c **= d;";
  auto toks = Tokenize(src);
  CHECK(toks[1].IsPunct(">>="));
  CHECK(toks[4].kind == TokenKind::kComment);
  CHECK(toks[4].text == "// tail");
  CHECK(toks[5].kind == TokenKind::kComment);
  CHECK(toks[8].kind == TokenKind::kNumberLiteral);
  CHECK(toks[8].text == "0x1F_ff");
  CHECK(toks[10].text == "1.5e3");
  CHECK(toks[11].IsKeyword("ether"));
  CHECK(toks[15].kind == TokenKind::kStringLiteral);
  CHECK(toks[15].text == "\"a\\\"b\"");
  CHECK(toks[19].text == "hex\"00ff\"");
  CheckLossless(src);
}

TEST_CASE("elementary type names") {
  CHECK(IsElementaryTypeName("uint256"));
  CHECK(IsElementaryTypeName("int8"));
  CHECK(IsElementaryTypeName("bytes32"));
  CHECK(IsElementaryTypeName("address"));
  CHECK_FALSE(IsElementaryTypeName("uint7"));
  CHECK_FALSE(IsElementaryTypeName("bytes33"));
  CHECK_FALSE(IsElementaryTypeName("uint0"));
  CHECK_FALSE(IsElementaryTypeName("owner"));
}

TEST_CASE("lex errors carry the position") {
  SUBCASE("unterminated string") {
    try {
      Tokenize("x = \"abc\ny");
      FAIL("expected LexError");
    } catch (const LexError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() == 5);
    }
  }
  SUBCASE("unterminated comment") {
    CHECK_THROWS_AS(Tokenize("a /* never closed"), LexError);
  }
  SUBCASE("illegal character") {
    try {
      Tokenize("contract A {\n  # }");
      FAIL("expected LexError");
    } catch (const LexError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 3);
    }
  }
  SUBCASE("malformed UTF-8") {
    CHECK_THROWS_AS(Tokenize(std::string("// \xff\xfe\n")), LexError);
  }
  SUBCASE("number glued to identifier") {
    CHECK_THROWS_AS(Tokenize("1ether"), LexError);
  }
}

TEST_CASE("UTF-8 is allowed in comments and strings") {
  std::string src = "// caf\xc3\xa9\nstring s = \"\xe2\x82\xac\";";
  CheckLossless(src);
}

TEST_CASE("lossless over fixtures and corpus") {
  CheckLossless(Fixture("egame.sol"));
  CheckLossless(Fixture("withdraw.sol"));
  for (const auto& path : CorpusFiles()) {
    CAPTURE(path.string());
    CheckLossless(ReadFile(path));
  }
}

TEST_CASE("lossless over random token soup") {
  const std::vector<std::string> pieces = {
      "contract", "A",  "{",    "}",        "uint256", "x_1", "=",  "==",
      "+=",       "(",  ")",    ";",        "42",      "0xAB", "\"s\"",
      "'t'",      ">>", ">>>=", "// c\n",   "/* c */", "=>",  "!", "$v",
      "ether",    "1e9", ".5",  "hex\"0a\"", "**",     "->",  ":="};
  const std::vector<std::string> gaps = {" ", "\n", "\t", "  \n  ", "\r\n"};
  std::mt19937 rng(1234);
  for (int round = 0; round < 300; ++round) {
    std::string src;
    int n = static_cast<int>(rng() % 40);
    for (int k = 0; k < n; ++k) {
      src += pieces[rng() % pieces.size()];
      src += gaps[rng() % gaps.size()];
    }
    CAPTURE(src);
    CheckLossless(src);
  }
}

}  // namespace
}  // namespace solbugsmith
