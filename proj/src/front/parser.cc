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

#include "solbugsmith/parser.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>
#include <utility>

#include "solbugsmith/error.h"

namespace solbugsmith {
namespace {

enum class ExprTop { kOther, kAssignment, kCall };

struct ExprInfo {
  std::size_t first = 0;  // token indices, inclusive
  std::size_t last = 0;
  ExprTop top = ExprTop::kOther;
  // Set when the expression is a call on a bare identifier.
  std::string callee;
};

bool IsAssignOp(std::string_view op) {
  return op == "=" || op == "+=" || op == "-=" || op == "*=" || op == "/=" ||
         op == "%=" || op == "|=" || op == "&=" || op == "^=" ||
         op == "<<=" || op == ">>=" || op == ">>>=";
}

int BinaryPrecedence(std::string_view op) {
  if (op == "||") return 3;
  if (op == "&&") return 4;
  if (op == "==" || op == "!=") return 5;
  if (op == "<" || op == ">" || op == "<=" || op == ">=") return 6;
  if (op == "|") return 7;
  if (op == "^") return 8;
  if (op == "&") return 9;
  if (op == "<<" || op == ">>" || op == ">>>") return 10;
  if (op == "+" || op == "-") return 11;
  if (op == "*" || op == "/" || op == "%") return 12;
  if (op == "**") return 13;
  return -1;
}

bool IsDenomination(std::string_view w) {
  static const std::unordered_set<std::string_view> kUnits = {
      "wei",     "gwei",    "szabo", "finney", "ether", "seconds",
      "minutes", "hours",   "days",  "weeks",  "years"};
  return kUnits.count(w) > 0;
}

bool IsStorageLocation(const Token& t) {
  return t.IsKeyword("memory") || t.IsKeyword("storage") ||
         t.IsKeyword("calldata");
}

class Parser {
 public:
  Parser(std::string_view src, const LineMap& lines,
         const std::vector<Token>& all)
      : src_(src), lines_(lines) {
    for (const Token& t : all) {
      if (t.kind != TokenKind::kComment) toks_.push_back(t);
    }
  }

  void ParseUnit(SourceUnit& unit) {
    while (!AtEnd()) {
      const Token& t = Cur();
      if (t.kind == TokenKind::kPragmaDirective) {
        if (!unit.pragma) unit.pragma = t.text;
        ++i_;
      } else if (t.IsKeyword("contract") || t.IsKeyword("interface") ||
                 t.IsKeyword("library") || t.IsKeyword("abstract")) {
        unit.contracts.push_back(ParseContract());
      } else if (t.IsKeyword("import") || t.IsKeyword("struct") ||
                 t.IsKeyword("enum") || t.IsKeyword("using") ||
                 t.IsKeyword("function") ||
                 (t.kind == TokenKind::kIdentifier && t.text == "error")) {
        unit.opaque_items.push_back(SkipOpaque());
      } else {
        Fail("pragma, import or contract definition");
      }
    }
  }

  std::vector<Stmt> ParseStatementList() {
    std::vector<Stmt> out;
    while (!AtEnd()) out.push_back(ParseStatement());
    return out;
  }

  std::vector<Member> ParseMemberList() {
    std::vector<Member> out;
    while (!AtEnd()) out.push_back(ParseMember());
    return out;
  }

 private:
  // ---- token cursor ------------------------------------------------------

  bool AtEnd() const { return i_ >= toks_.size(); }

  const Token& Cur() const {
    if (AtEnd()) Fail("more input");
    return toks_[i_];
  }

  const Token* PeekTok(std::size_t ahead = 0) const {
    return i_ + ahead < toks_.size() ? &toks_[i_ + ahead] : nullptr;
  }

  bool CurIsPunct(std::string_view p) const {
    return !AtEnd() && toks_[i_].IsPunct(p);
  }
  bool CurIsKeyword(std::string_view k) const {
    return !AtEnd() && toks_[i_].IsKeyword(k);
  }

  std::string Describe() const {
    if (AtEnd()) return "end of input";
    return "'" + toks_[i_].text + "'";
  }

  [[noreturn]] void Fail(const std::string& expected) const {
    std::size_t at = AtEnd() ? src_.size() : toks_[i_].span.start;
    throw ParseError(lines_.LineOf(at), lines_.ColumnOf(at), expected,
                     Describe());
  }

  [[noreturn]] void FailAt(std::size_t tok, const std::string& expected,
                           const std::string& found) const {
    std::size_t at = tok < toks_.size() ? toks_[tok].span.start : src_.size();
    throw ParseError(lines_.LineOf(at), lines_.ColumnOf(at), expected, found);
  }

  const Token& ExpectPunct(std::string_view p) {
    if (!CurIsPunct(p)) Fail("'" + std::string(p) + "'");
    return toks_[i_++];
  }

  // Closing delimiter of a group opened at token `open_tok`.
  const Token& ExpectClose(std::string_view p, std::size_t open_tok) {
    if (!CurIsPunct(p)) {
      Fail("'" + std::string(p) + "' to close '" + toks_[open_tok].text +
           "' opened at " +
           std::to_string(toks_[open_tok].span.start_line) + ":" +
           std::to_string(lines_.ColumnOf(toks_[open_tok].span.start)));
    }
    return toks_[i_++];
  }

  const Token& ExpectIdentifier() {
    if (AtEnd() || Cur().kind != TokenKind::kIdentifier) Fail("identifier");
    return toks_[i_++];
  }

  bool AcceptPunct(std::string_view p) {
    if (CurIsPunct(p)) {
      ++i_;
      return true;
    }
    return false;
  }

  Span SpanOfTokens(std::size_t first, std::size_t last) const {
    return lines_.MakeSpan(toks_[first].span.start, toks_[last].span.end);
  }

  std::string Slice(const Span& s) const {
    return std::string(src_.substr(s.start, s.size()));
  }

  std::string TokensText(std::size_t first, std::size_t last) const {
    return Slice(SpanOfTokens(first, last));
  }

  // ---- opaque constructs -------------------------------------------------

  // Consumes a balanced construct ending at a top-level ';' or at a '}' that
  // closes the construct (continuing through else/catch/while tails).
  Span SkipOpaque() {
    const std::size_t first = i_;
    int depth = 0;
    std::vector<std::size_t> open;
    while (true) {
      if (AtEnd()) {
        if (!open.empty()) {
          FailAt(i_, "closing delimiter for '" + toks_[open.back()].text + "'",
                 "end of input");
        }
        Fail("';' or '}'");
      }
      const Token& t = toks_[i_];
      if (t.IsPunct("{") || t.IsPunct("(") || t.IsPunct("[")) {
        open.push_back(i_);
        ++depth;
      } else if (t.IsPunct("}") || t.IsPunct(")") || t.IsPunct("]")) {
        if (open.empty()) Fail("balanced construct");
        const std::string& o = toks_[open.back()].text;
        if ((o == "{" && t.text != "}") || (o == "(" && t.text != ")") ||
            (o == "[" && t.text != "]")) {
          Fail("matching delimiter for '" + o + "'");
        }
        open.pop_back();
        --depth;
        if (depth == 0 && t.text == "}") {
          const Token* next = PeekTok(1);
          bool tail = next && (next->IsKeyword("else") ||
                               next->IsKeyword("catch") ||
                               next->IsKeyword("while"));
          if (!tail) {
            ++i_;
            if (CurIsPunct(";")) ++i_;
            break;
          }
        }
      } else if (depth == 0 && t.IsPunct(";")) {
        ++i_;
        break;
      }
      ++i_;
    }
    return SpanOfTokens(first, i_ - 1);
  }

  // ---- contracts and members --------------------------------------------

  ContractDef ParseContract() {
    ContractDef c;
    const std::size_t first = i_;
    if (CurIsKeyword("abstract")) {
      c.is_abstract = true;
      ++i_;
      if (!CurIsKeyword("contract")) Fail("'contract'");
    }
    const Token& kw = Cur();
    c.kind = kw.text == "interface"  ? ContractKind::kInterface
             : kw.text == "library" ? ContractKind::kLibrary
                                    : ContractKind::kContract;
    ++i_;
    c.name = ExpectIdentifier().text;
    if (CurIsKeyword("is")) {
      ++i_;
      do {
        const std::size_t base_first = i_;
        ParseIdentifierPath();
        if (CurIsPunct("(")) ParseCallArguments();
        c.bases.push_back(TokensText(base_first, i_ - 1));
      } while (AcceptPunct(","));
    }
    const std::size_t open = i_;
    ExpectPunct("{");
    while (!CurIsPunct("}")) {
      if (AtEnd()) ExpectClose("}", open);
      c.members.push_back(ParseMember());
    }
    const Token& close = toks_[i_++];
    c.body_span =
        lines_.MakeSpan(toks_[open].span.end, close.span.start);
    c.span = SpanOfTokens(first, i_ - 1);
    return c;
  }

  void ParseIdentifierPath() {
    ExpectIdentifier();
    while (CurIsPunct(".")) {
      ++i_;
      ExpectIdentifier();
    }
  }

  Member ParseMember() {
    const Token& t = Cur();
    const std::size_t first = i_;
    Member m;
    if (t.IsKeyword("function") || t.IsKeyword("constructor") ||
        t.IsKeyword("modifier") ||
        (t.kind == TokenKind::kIdentifier &&
         (t.text == "fallback" || t.text == "receive") && PeekTok(1) &&
         PeekTok(1)->IsPunct("("))) {
      FunctionDef fn = ParseCallable();
      m.kind = fn.kind == CallableKind::kConstructor ? MemberKind::kConstructor
               : fn.kind == CallableKind::kModifier  ? MemberKind::kModifier
                                                     : MemberKind::kFunction;
      m.name = fn.name;
      m.function = std::move(fn);
    } else if (t.IsKeyword("event")) {
      ++i_;
      m.kind = MemberKind::kEvent;
      m.name = ExpectIdentifier().text;
      m.event_params = ParseParameterList(/*allow_indexed=*/true);
      if (CurIsKeyword("anonymous")) ++i_;
      ExpectPunct(";");
    } else if (t.IsKeyword("struct") || t.IsKeyword("enum") ||
               t.IsKeyword("using") ||
               (t.kind == TokenKind::kIdentifier && t.text == "error" &&
                PeekTok(1) &&
                PeekTok(1)->kind == TokenKind::kIdentifier)) {
      m.kind = MemberKind::kOpaque;
      m.span = SkipOpaque();
      if (!t.IsKeyword("using") && toks_[first + 1].kind == TokenKind::kIdentifier) {
        m.name = toks_[first + 1].text;
      }
      return m;
    } else {
      m.kind = MemberKind::kStateVar;
      const std::size_t type_first = i_;
      ParseTypeName();
      m.type = TokensText(type_first, i_ - 1);
      while (!AtEnd() &&
             (CurIsKeyword("public") || CurIsKeyword("private") ||
              CurIsKeyword("internal") || CurIsKeyword("constant") ||
              CurIsKeyword("immutable") || CurIsKeyword("override"))) {
        ++i_;
      }
      m.name = ExpectIdentifier().text;
      if (AcceptPunct("=")) ParseExpression();
      ExpectPunct(";");
    }
    m.span = SpanOfTokens(first, i_ - 1);
    return m;
  }

  FunctionDef ParseCallable() {
    FunctionDef fn;
    const Token& kw = toks_[i_++];
    if (kw.IsKeyword("constructor")) {
      fn.kind = CallableKind::kConstructor;
      fn.name = "constructor";
    } else if (kw.IsKeyword("modifier")) {
      fn.kind = CallableKind::kModifier;
      fn.name = ExpectIdentifier().text;
      fn.visibility = Visibility::kInternal;
    } else if (kw.kind == TokenKind::kIdentifier) {
      fn.kind = CallableKind::kFallback;
      fn.name = kw.text;
    } else if (!AtEnd() && Cur().kind == TokenKind::kIdentifier) {
      fn.name = toks_[i_++].text;
    } else {
      fn.kind = CallableKind::kFallback;
    }
    if (fn.kind != CallableKind::kModifier || CurIsPunct("(")) {
      fn.params = ParseParameterList(false);
    }
    // Visibility, mutability, modifier invocations, override/virtual.
    while (!AtEnd() && !CurIsPunct("{") && !CurIsPunct(";")) {
      const Token& t = Cur();
      if (t.IsKeyword("public")) {
        fn.visibility = Visibility::kPublic;
        ++i_;
      } else if (t.IsKeyword("private")) {
        fn.visibility = Visibility::kPrivate;
        ++i_;
      } else if (t.IsKeyword("internal")) {
        fn.visibility = Visibility::kInternal;
        ++i_;
      } else if (t.IsKeyword("external")) {
        fn.visibility = Visibility::kExternal;
        ++i_;
      } else if (t.IsKeyword("payable")) {
        fn.mutability = Mutability::kPayable;
        ++i_;
      } else if (t.IsKeyword("view") || t.IsKeyword("constant")) {
        fn.mutability = Mutability::kView;
        ++i_;
      } else if (t.IsKeyword("pure")) {
        fn.mutability = Mutability::kPure;
        ++i_;
      } else if (t.IsKeyword("virtual")) {
        ++i_;
      } else if (t.IsKeyword("override")) {
        ++i_;
        if (CurIsPunct("(")) {
          const std::size_t open = i_++;
          ParseIdentifierPath();
          while (AcceptPunct(",")) ParseIdentifierPath();
          ExpectClose(")", open);
        }
      } else if (t.IsKeyword("returns")) {
        ++i_;
        fn.returns = ParseParameterList(false);
      } else if (t.kind == TokenKind::kIdentifier) {
        const std::size_t mfirst = i_;
        ParseIdentifierPath();
        if (CurIsPunct("(")) ParseCallArguments();
        fn.modifiers.push_back(TokensText(mfirst, i_ - 1));
      } else {
        Fail("function body, ';' or function attribute");
      }
    }
    if (AtEnd()) Fail("function body or ';'");
    if (AcceptPunct(";")) return fn;
    const std::size_t open = i_++;
    while (!CurIsPunct("}")) {
      if (AtEnd()) ExpectClose("}", open);
      fn.statements.push_back(ParseStatement());
    }
    fn.body_span = lines_.MakeSpan(toks_[open].span.end, toks_[i_].span.start);
    ++i_;
    return fn;
  }

  std::vector<Param> ParseParameterList(bool allow_indexed) {
    std::vector<Param> params;
    const std::size_t open = i_;
    ExpectPunct("(");
    if (AcceptPunct(")")) return params;
    while (true) {
      if (AtEnd() || CurIsPunct("{") || CurIsPunct("}") || CurIsPunct(";")) {
        ExpectClose(")", open);
      }
      Param p;
      const std::size_t type_first = i_;
      ParseTypeName();
      p.type = TokensText(type_first, i_ - 1);
      while (!AtEnd() && (IsStorageLocation(Cur()) ||
                          (allow_indexed && CurIsKeyword("indexed")))) {
        ++i_;
      }
      if (!AtEnd() && Cur().kind == TokenKind::kIdentifier) {
        p.name = toks_[i_++].text;
      }
      params.push_back(std::move(p));
      if (AcceptPunct(",")) continue;
      ExpectClose(")", open);
      return params;
    }
  }

  // ---- types -------------------------------------------------------------

  void ParseTypeName() {
    if (AtEnd()) Fail("type name");
    const Token& t = Cur();
    if (t.IsKeyword("mapping")) {
      ++i_;
      const std::size_t open = i_;
      ExpectPunct("(");
      ParseTypeName();
      ExpectPunct("=>");
      ParseTypeName();
      ExpectClose(")", open);
    } else if (t.IsKeyword("function")) {
      ++i_;
      ParseParameterList(false);
      while (!AtEnd() &&
             (CurIsKeyword("internal") || CurIsKeyword("external") ||
              CurIsKeyword("pure") || CurIsKeyword("view") ||
              CurIsKeyword("payable"))) {
        ++i_;
      }
      if (CurIsKeyword("returns")) {
        ++i_;
        ParseParameterList(false);
      }
    } else if (t.kind == TokenKind::kKeyword &&
               (IsElementaryTypeName(t.text) || t.text == "var")) {
      ++i_;
      if (t.text == "address" && CurIsKeyword("payable")) ++i_;
    } else if (t.kind == TokenKind::kIdentifier) {
      ParseIdentifierPath();
    } else {
      Fail("type name");
    }
    while (CurIsPunct("[")) {
      const std::size_t open = i_++;
      if (!CurIsPunct("]")) ParseExpression();
      ExpectClose("]", open);
    }
  }

  // ---- statements --------------------------------------------------------

  Stmt Finish(Stmt s, std::size_t first) {
    s.span = SpanOfTokens(first, i_ - 1);
    s.text = Slice(s.span);
    return s;
  }

  Stmt ParseBlock() {
    Stmt s;
    s.kind = StmtKind::kBlock;
    const std::size_t first = i_;
    ExpectPunct("{");
    while (!CurIsPunct("}")) {
      if (AtEnd()) ExpectClose("}", first);
      s.children.push_back(ParseStatement());
    }
    ++i_;
    return Finish(std::move(s), first);
  }

  Span ParseParenHeader(const std::function<void()>& inner) {
    const std::size_t open = i_;
    ExpectPunct("(");
    inner();
    const Token& close = ExpectClose(")", open);
    return lines_.MakeSpan(toks_[open].span.end, close.span.start);
  }

  Stmt ParseStatement() {
    const std::size_t first = i_;
    const Token& t = Cur();
    Stmt s;
    if (t.IsPunct("{")) return ParseBlock();
    if (t.IsKeyword("if")) {
      ++i_;
      s.kind = StmtKind::kIfStmt;
      s.header = ParseParenHeader([&] { ParseExpression(); });
      s.children.push_back(ParseStatement());
      if (CurIsKeyword("else")) {
        ++i_;
        s.children.push_back(ParseStatement());
      }
      return Finish(std::move(s), first);
    }
    if (t.IsKeyword("for")) {
      ++i_;
      s.kind = StmtKind::kForStmt;
      s.header = ParseParenHeader([&] {
        if (!AcceptPunct(";")) s.declared = ParseSimpleStatement().declared;
        if (!CurIsPunct(";")) ParseExpression();
        ExpectPunct(";");
        if (!CurIsPunct(")")) ParseExpression();
      });
      s.children.push_back(ParseStatement());
      return Finish(std::move(s), first);
    }
    if (t.IsKeyword("while")) {
      ++i_;
      s.kind = StmtKind::kWhileStmt;
      s.header = ParseParenHeader([&] { ParseExpression(); });
      s.children.push_back(ParseStatement());
      return Finish(std::move(s), first);
    }
    if (t.IsKeyword("do")) {
      ++i_;
      s.kind = StmtKind::kWhileStmt;
      s.children.push_back(ParseStatement());
      if (!CurIsKeyword("while")) Fail("'while'");
      ++i_;
      s.header = ParseParenHeader([&] { ParseExpression(); });
      ExpectPunct(";");
      return Finish(std::move(s), first);
    }
    if (t.IsKeyword("return")) {
      ++i_;
      s.kind = StmtKind::kReturnStmt;
      if (!CurIsPunct(";")) ParseExpression();
      ExpectPunct(";");
      return Finish(std::move(s), first);
    }
    if (t.IsKeyword("emit")) {
      ++i_;
      s.kind = StmtKind::kEmitStmt;
      ParseExpression();
      ExpectPunct(";");
      return Finish(std::move(s), first);
    }
    if (t.IsKeyword("throw")) {
      ++i_;
      s.kind = StmtKind::kRevertStmt;
      ExpectPunct(";");
      return Finish(std::move(s), first);
    }
    if (t.IsKeyword("break") || t.IsKeyword("continue")) {
      ++i_;
      s.kind = StmtKind::kExpressionStmt;
      ExpectPunct(";");
      return Finish(std::move(s), first);
    }
    if (t.IsKeyword("assembly") || t.IsKeyword("unchecked") ||
        t.IsKeyword("try")) {
      s.kind = StmtKind::kExpressionStmt;
      s.opaque = true;
      SkipOpaque();
      return Finish(std::move(s), first);
    }
    if (t.IsKeyword("function") && PeekTok(1) &&
        PeekTok(1)->kind == TokenKind::kIdentifier) {
      FailAt(i_, "statement", "nested function definition");
    }
    if (t.IsKeyword("constructor") || t.IsKeyword("modifier") ||
        t.IsKeyword("event") || t.IsKeyword("contract")) {
      FailAt(i_, "statement", "nested " + t.text + " definition");
    }
    s = ParseSimpleStatement();
    return Finish(std::move(s), first);
  }

  // Variable declaration or expression statement, ';' included.
  Stmt ParseSimpleStatement() {
    Stmt s;
    const std::size_t first = i_;
    if (TryVariableDeclaration(&s.declared)) {
      s.kind = StmtKind::kLocalVarDecl;
      return Finish(std::move(s), first);
    }
    ExprInfo e = ParseExpression();
    ExpectPunct(";");
    if (e.top == ExprTop::kAssignment) {
      s.kind = StmtKind::kAssignment;
    } else if (e.top == ExprTop::kCall && e.callee == "require") {
      s.kind = StmtKind::kRequireStmt;
    } else if (e.top == ExprTop::kCall && e.callee == "revert") {
      s.kind = StmtKind::kRevertStmt;
    } else {
      s.kind = StmtKind::kExpressionStmt;
    }
    return Finish(std::move(s), first);
  }

  // Speculatively parses `Type [location] name [= expr];` or a tuple
  // declaration `(Type a, , Type b) = expr;`. Restores the cursor and
  // returns false when the tokens are not a declaration.
  bool TryVariableDeclaration(std::vector<std::string>* names) {
    const std::size_t save = i_;
    bool is_decl = false;
    std::vector<std::string> found;
    try {
      if (CurIsPunct("(")) {
        ++i_;
        bool saw_component = false;
        while (true) {
          if (CurIsPunct(",")) {
            ++i_;
            continue;
          }
          if (CurIsPunct(")")) {
            ++i_;
            break;
          }
          ParseTypeName();
          if (!AtEnd() && IsStorageLocation(Cur())) ++i_;
          found.push_back(ExpectIdentifier().text);
          saw_component = true;
          if (!CurIsPunct(",") && !CurIsPunct(")")) Fail("',' or ')'");
        }
        is_decl = saw_component && CurIsPunct("=");
      } else {
        ParseTypeName();
        if (!AtEnd() && IsStorageLocation(Cur())) ++i_;
        found.push_back(ExpectIdentifier().text);
        is_decl = CurIsPunct("=") || CurIsPunct(";");
      }
    } catch (const ParseError&) {
      is_decl = false;
    }
    if (!is_decl) {
      i_ = save;
      return false;
    }
    *names = std::move(found);
    if (AcceptPunct("=")) ParseExpression();
    ExpectPunct(";");
    return true;
  }

  // ---- expressions -------------------------------------------------------

  ExprInfo ParseExpression() {
    ExprInfo lhs = ParseTernary();
    if (!AtEnd() && Cur().kind == TokenKind::kPunctuator &&
        IsAssignOp(Cur().text)) {
      ++i_;
      ExprInfo rhs = ParseExpression();
      ExprInfo out;
      out.first = lhs.first;
      out.last = rhs.last;
      out.top = ExprTop::kAssignment;
      return out;
    }
    return lhs;
  }

  ExprInfo ParseTernary() {
    ExprInfo cond = ParseBinary(3);
    if (CurIsPunct("?")) {
      ++i_;
      ParseExpression();
      ExpectPunct(":");
      ExprInfo rhs = ParseExpression();
      ExprInfo out;
      out.first = cond.first;
      out.last = rhs.last;
      return out;
    }
    return cond;
  }

  ExprInfo ParseBinary(int min_prec) {
    ExprInfo lhs = ParseUnary();
    while (!AtEnd() && Cur().kind == TokenKind::kPunctuator) {
      int prec = BinaryPrecedence(Cur().text);
      if (prec < min_prec) break;
      const bool right_assoc = Cur().text == "**";
      ++i_;
      ExprInfo rhs = ParseBinary(right_assoc ? prec : prec + 1);
      ExprInfo out;
      out.first = lhs.first;
      out.last = rhs.last;
      lhs = out;
    }
    return lhs;
  }

  ExprInfo ParseUnary() {
    if (AtEnd()) Fail("expression");
    const Token& t = Cur();
    if (t.IsPunct("!") || t.IsPunct("~") || t.IsPunct("-") ||
        t.IsPunct("+") || t.IsPunct("++") || t.IsPunct("--") ||
        t.IsKeyword("delete")) {
      const std::size_t first = i_++;
      ExprInfo inner = ParseUnary();
      ExprInfo out;
      out.first = first;
      out.last = inner.last;
      return out;
    }
    return ParsePostfix(ParsePrimary());
  }

  ExprInfo ParsePrimary() {
    if (AtEnd()) Fail("expression");
    const Token& t = Cur();
    ExprInfo e;
    e.first = i_;
    switch (t.kind) {
      case TokenKind::kIdentifier:
        ++i_;
        break;
      case TokenKind::kNumberLiteral:
        ++i_;
        if (!AtEnd() && Cur().kind == TokenKind::kKeyword &&
            IsDenomination(Cur().text)) {
          ++i_;
        }
        break;
      case TokenKind::kStringLiteral:
        while (!AtEnd() && Cur().kind == TokenKind::kStringLiteral) ++i_;
        break;
      case TokenKind::kKeyword:
        if (t.text == "true" || t.text == "false") {
          ++i_;
        } else if (t.text == "new") {
          ++i_;
          ParseTypeName();
        } else if (t.text == "payable" && PeekTok(1) &&
                   PeekTok(1)->IsPunct("(")) {
          ++i_;
        } else if (IsElementaryTypeName(t.text)) {
          ++i_;
          if (t.text == "address" && CurIsKeyword("payable")) ++i_;
          // `uint[]` style type expressions, e.g. in abi.decode.
          while (CurIsPunct("[") && PeekTok(1) && PeekTok(1)->IsPunct("]")) {
            i_ += 2;
          }
        } else {
          Fail("expression");
        }
        break;
      case TokenKind::kPunctuator:
        if (t.text == "(") {
          const std::size_t open = i_++;
          // Tuple with possibly empty components.
          while (!CurIsPunct(")")) {
            if (CurIsPunct(",")) {
              ++i_;
              continue;
            }
            ParseExpression();
            if (!CurIsPunct(",") && !CurIsPunct(")")) {
              ExpectClose(")", open);
            }
          }
          ++i_;
        } else if (t.text == "[") {
          const std::size_t open = i_++;
          if (!CurIsPunct("]")) {
            ParseExpression();
            while (AcceptPunct(",")) ParseExpression();
          }
          ExpectClose("]", open);
        } else {
          Fail("expression");
        }
        break;
      default:
        Fail("expression");
    }
    e.last = i_ - 1;
    return e;
  }

  void ParseCallArguments() {
    const std::size_t open = i_;
    ExpectPunct("(");
    if (CurIsPunct("{")) {
      ParseNamedArguments();
      ExpectClose(")", open);
      return;
    }
    if (!CurIsPunct(")")) {
      ParseExpression();
      while (AcceptPunct(",")) ParseExpression();
    }
    ExpectClose(")", open);
  }

  void ParseNamedArguments() {
    const std::size_t open = i_;
    ExpectPunct("{");
    if (!CurIsPunct("}")) {
      do {
        ExpectIdentifier();
        ExpectPunct(":");
        ParseExpression();
      } while (AcceptPunct(","));
    }
    ExpectClose("}", open);
  }

  ExprInfo ParsePostfix(ExprInfo e) {
    const bool bare_identifier = e.first == e.last &&
                                 toks_[e.first].kind == TokenKind::kIdentifier;
    bool first_suffix = true;
    while (!AtEnd()) {
      const Token& t = Cur();
      if (t.IsPunct(".")) {
        ++i_;
        if (AtEnd() || (Cur().kind != TokenKind::kIdentifier &&
                        Cur().kind != TokenKind::kKeyword)) {
          Fail("member name");
        }
        ++i_;
        e.top = ExprTop::kOther;
      } else if (t.IsPunct("[")) {
        const std::size_t open = i_++;
        if (!CurIsPunct("]") && !CurIsPunct(":")) ParseExpression();
        if (AcceptPunct(":")) {
          if (!CurIsPunct("]")) ParseExpression();
        }
        ExpectClose("]", open);
        e.top = ExprTop::kOther;
      } else if (t.IsPunct("(")) {
        ParseCallArguments();
        e.top = ExprTop::kCall;
        e.callee = (first_suffix && bare_identifier) ? toks_[e.first].text
                                                     : std::string();
      } else if (t.IsPunct("{") && PeekTok(1) &&
                 PeekTok(1)->kind == TokenKind::kIdentifier && PeekTok(2) &&
                 PeekTok(2)->IsPunct(":")) {
        ParseNamedArguments();
        e.top = ExprTop::kOther;
      } else if (t.IsPunct("++") || t.IsPunct("--")) {
        ++i_;
        e.top = ExprTop::kOther;
      } else {
        break;
      }
      first_suffix = false;
      e.last = i_ - 1;
    }
    return e;
  }

  std::string_view src_;
  const LineMap& lines_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// Rejects a name declared twice in one scope. Inner scopes may shadow.
struct DeclarationChecker {
  const LineMap& lines;

  [[noreturn]] void Report(std::size_t offset, std::string message) {
    throw ParseError(lines.LineOf(offset), lines.ColumnOf(offset),
                     "fresh identifier", std::move(message));
  }

  // Only a redeclaration within the same block is an error; nested blocks
  // open a fresh scope that may shadow.
  void CheckScope(const std::vector<Stmt>& stmts,
                  std::set<std::string> scope) {
    for (const Stmt& s : stmts) {
      if (s.kind == StmtKind::kLocalVarDecl) {
        for (const std::string& name : s.declared) {
          if (!scope.insert(name).second) {
            Report(s.span.start, "duplicate declaration of '" + name + "'");
          }
        }
      }
      if (s.opaque) continue;
      if (s.kind == StmtKind::kBlock) {
        CheckScope(s.children, {});
      } else if (s.kind == StmtKind::kForStmt) {
        CheckScope(s.children, {s.declared.begin(), s.declared.end()});
      } else if (s.IsCompound()) {
        CheckScope(s.children, {});
      }
    }
  }

  void CheckCallable(const FunctionDef& fn, std::size_t at) {
    std::set<std::string> scope;
    auto add = [&](const std::vector<Param>& params) {
      for (const Param& p : params) {
        if (p.name.empty()) continue;
        if (!scope.insert(p.name).second) {
          Report(at, "duplicate parameter '" + p.name + "'");
        }
      }
    };
    add(fn.params);
    if (fn.returns) add(*fn.returns);
    CheckScope(fn.statements, scope);
  }

  void CheckContract(const ContractDef& c) {
    std::map<std::string, MemberKind> names;
    std::set<std::string> signatures;
    for (const Member& m : c.members) {
      if (m.kind == MemberKind::kOpaque || m.name.empty()) continue;
      if (m.kind == MemberKind::kFunction) {
        std::string sig = m.name + "(";
        for (const Param& p : m.function->params) sig += p.type + ",";
        if (!signatures.insert(sig).second) {
          Report(m.span.start, "function '" + m.name +
                                   "' redeclared with the same parameters");
        }
      }
      auto [it, fresh] = names.emplace(m.name, m.kind);
      const bool overloadable =
          (m.kind == MemberKind::kFunction || m.kind == MemberKind::kEvent) &&
          it->second == m.kind;
      if (!fresh && !overloadable && m.kind != MemberKind::kConstructor) {
        Report(m.span.start, "identifier '" + m.name +
                                 "' already declared in contract '" + c.name +
                                 "'");
      }
      if (m.function) CheckCallable(*m.function, m.span.start);
    }
  }
};

}  // namespace

std::string_view StmtKindName(StmtKind kind) {
  switch (kind) {
    case StmtKind::kLocalVarDecl:
      return "localVarDecl";
    case StmtKind::kAssignment:
      return "assignment";
    case StmtKind::kExpressionStmt:
      return "expressionStmt";
    case StmtKind::kIfStmt:
      return "ifStmt";
    case StmtKind::kForStmt:
      return "forStmt";
    case StmtKind::kWhileStmt:
      return "whileStmt";
    case StmtKind::kReturnStmt:
      return "returnStmt";
    case StmtKind::kRequireStmt:
      return "requireStmt";
    case StmtKind::kRevertStmt:
      return "revertStmt";
    case StmtKind::kEmitStmt:
      return "emitStmt";
    case StmtKind::kBlock:
      return "block";
  }
  return "unknown";
}

std::string_view MemberKindName(MemberKind kind) {
  switch (kind) {
    case MemberKind::kStateVar:
      return "stateVarDecl";
    case MemberKind::kFunction:
      return "functionDef";
    case MemberKind::kModifier:
      return "modifierDef";
    case MemberKind::kConstructor:
      return "constructorDef";
    case MemberKind::kEvent:
      return "eventDef";
    case MemberKind::kOpaque:
      return "opaqueMember";
  }
  return "unknown";
}

SourceUnit Parse(std::string_view source) {
  SourceUnit unit;
  unit.raw_text = std::string(source);
  unit.line_map = LineMap(unit.raw_text);
  unit.tokens = Tokenize(unit.raw_text, unit.line_map);
  Parser parser(unit.raw_text, unit.line_map, unit.tokens);
  parser.ParseUnit(unit);
  DeclarationChecker checker{unit.line_map};
  for (const ContractDef& c : unit.contracts) checker.CheckContract(c);
  return unit;
}

std::vector<Stmt> ParseStatements(std::string_view text) {
  LineMap lines(text);
  std::vector<Token> tokens = Tokenize(text, lines);
  Parser parser(text, lines, tokens);
  return parser.ParseStatementList();
}

std::vector<Member> ParseMembers(std::string_view text) {
  LineMap lines(text);
  std::vector<Token> tokens = Tokenize(text, lines);
  Parser parser(text, lines, tokens);
  return parser.ParseMemberList();
}

std::vector<std::string> CollectIdentifiers(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kIdentifier) out.push_back(t.text);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace solbugsmith
