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

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "oracles.h"
#include "solbugsmith/bug_pool.h"
#include "solbugsmith/error.h"
#include "solbugsmith/injector.h"
#include "solbugsmith/locator.h"
#include "solbugsmith/parser.h"
#include "test_util.h"

namespace solbugsmith {
namespace {

using testing::CorpusFiles;
using testing::Fixture;
using testing::ReadFile;

InjectionProfile Locate(const std::string& src, BugType type,
                        const BugPool& pool = DefaultPool()) {
  return FindAllPotentialLocations(Parse(src), type, pool, "test");
}

std::vector<InjectionSite> OfKind(const InjectionProfile& p, SiteKind kind) {
  std::vector<InjectionSite> out;
  for (const InjectionSite& s : p.sites) {
    if (s.kind == kind) out.push_back(s);
  }
  return out;
}

std::size_t Count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t i = text.find(needle); i != std::string::npos;
       i = text.find(needle, i + 1)) {
    ++n;
  }
  return n;
}

bool AllBlank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n';
  });
}

TEST_CASE("empty profile leaves the source untouched") {
  const std::string src = Fixture("egame.sol");
  InjectionProfile p = Locate(src, BugType::kReentrancy);
  p.sites.clear();
  InjectionResult r = InjectAll(src, p, DefaultPool(), 5);
  CHECK(r.buggy_source == src);
  CHECK(r.log.empty());
  CHECK(r.counter_start == 5);
  CHECK(r.counter_end == 5);
}

TEST_CASE("function inserted into an empty contract") {
  const std::string src = "contract A {}";
  InjectionProfile p = Locate(src, BugType::kReentrancy);
  REQUIRE(p.sites.size() == 1);
  CHECK(ApplySnippet(src, p.sites[0], "function f() public {}") ==
        "contract A {\nfunction f() public {}\n}");
}

TEST_CASE("snippet lines take the indentation of their neighbours") {
  const std::string src =
      "contract A {\n    function f() public {\n        uint x = 1;\n    }\n}\n";
  InjectionProfile p = Locate(src, BugType::kTimestampDependency);
  std::vector<InjectionSite> simple;
  for (const InjectionSite& s : p.sites) {
    if (s.form == SnippetForm::kSimpleStatement) simple.push_back(s);
  }
  REQUIRE(simple.size() == 2);
  CHECK(ApplySnippet(src, simple[0], "uint y = 2;") ==
        "contract A {\n    function f() public {\n        uint y = 2;\n"
        "        uint x = 1;\n    }\n}\n");
  CHECK(ApplySnippet(src, simple[1], "if (x > 0) {\n    x = 0;\n}") ==
        "contract A {\n    function f() public {\n        uint x = 1;\n"
        "        if (x > 0) {\n            x = 0;\n        }\n    }\n}\n");
}

TEST_CASE("owner check becomes a tx.origin check") {
  const std::string src = Fixture("sendto.sol");
  InjectionProfile p = Locate(src, BugType::kTxOrigin);
  std::vector<InjectionSite> t = OfKind(p, SiteKind::kTransform);
  REQUIRE(t.size() == 1);
  const TransformPattern* pattern = DefaultPool().FindTransform(t[0].ref);
  REQUIRE(pattern != nullptr);
  std::string out = ApplyTransformation(src, t[0], *pattern);
  std::string expected = src;
  expected.replace(expected.find("msg.sender == owner"), 19,
                   "tx.origin == owner");
  CHECK(out == expected);
  CHECK(out.find("    require (tx.origin == owner);\n") != std::string::npos);

  InjectionResult r = InjectAll(src, p, DefaultPool(), 0, "sendto.sol");
  auto it = std::find_if(r.log.begin(), r.log.end(), [](const BugLogEntry& e) {
    return e.approach == Approach::kCodeTransformation;
  });
  REQUIRE(it != r.log.end());
  CHECK(it->bug_type == BugType::kTxOrigin);
  CHECK_FALSE(it->snippet_id.has_value());
  CHECK(r.buggy_source.substr(it->byte_span.start, it->byte_span.size()) ==
        "tx.origin == owner");
  // Nothing left to transform.
  CHECK(OfKind(Locate(r.buggy_source, BugType::kTxOrigin), SiteKind::kTransform)
            .empty());
}

TEST_CASE("transformation with a different token count is space-joined") {
  const std::string src =
      "contract A {\n  function f() public {\n    uint x = now;\n  }\n}\n";
  BugPool pool;
  pool.AddTransform({"clock", BugType::kTimestampDependency, {"now"},
                     {"block", ".", "timestamp", "+", "1"}});
  InjectionProfile p = Locate(src, BugType::kTimestampDependency, pool);
  std::vector<InjectionSite> t = OfKind(p, SiteKind::kTransform);
  REQUIRE(t.size() == 1);
  CHECK(ApplyTransformation(src, t[0], *pool.FindTransform("clock")) ==
        "contract A {\n  function f() public {\n    uint x = block.timestamp + 1;"
        "\n  }\n}\n");
}

TEST_CASE("failure branch loses its revert") {
  const std::string src = Fixture("withdraw.sol");
  InjectionProfile p = Locate(src, BugType::kUnhandledException);
  std::vector<InjectionSite> w = OfKind(p, SiteKind::kWeaken);
  REQUIRE(w.size() == 1);
  std::string out = ApplyWeakening(src, w[0]);
  std::string expected = src;
  expected.replace(expected.find("    { revert(); }}"), 18,
                   "    { //revert();\n    }}");
  CHECK(out == expected);
  CHECK(Validate(out).empty());
  CHECK(OfKind(Locate(out, BugType::kUnhandledException), SiteKind::kWeaken)
            .empty());

  InjectionResult r = InjectAll(src, p, DefaultPool(), 0);
  CHECK(Validate(r.buggy_source).empty());
  CHECK(OfKind(Locate(r.buggy_source, BugType::kUnhandledException),
               SiteKind::kWeaken)
            .empty());
  int weakened = 0;
  for (const BugLogEntry& e : r.log) {
    if (e.approach != Approach::kWeakenSecurity) continue;
    ++weakened;
    CHECK(r.buggy_source.substr(e.byte_span.start, e.byte_span.size()) ==
          "//revert();");
  }
  CHECK(weakened == 1);
}

TEST_CASE("weakening shapes") {
  SUBCASE("require around the send keeps the call") {
    const std::string src = Fixture("require_send.sol");
    std::vector<InjectionSite> w =
        OfKind(Locate(src, BugType::kUnhandledException), SiteKind::kWeaken);
    REQUIRE(w.size() == 1);
    std::string out = ApplyWeakening(src, w[0]);
    CHECK(out.find("        //require(msg.sender.send(x));\n"
                   "        msg.sender.send(x);\n    }") != std::string::npos);
    CHECK(Validate(out).empty());
  }
  SUBCASE("bare arm gets an empty block") {
    const std::string src =
        "contract A {\n  function f(address payable a) public {\n"
        "    if (!a.send(1)) revert();\n    a.transfer(0);\n  }\n}\n";
    std::vector<InjectionSite> w =
        OfKind(Locate(src, BugType::kUnhandledException), SiteKind::kWeaken);
    REQUIRE(w.size() == 1);
    std::string out = ApplyWeakening(src, w[0]);
    CHECK(out.find("    if (!a.send(1)) { } //revert();\n    a.transfer(0);") !=
          std::string::npos);
    CHECK(Validate(out).empty());
  }
  SUBCASE("multi-line statement is commented line by line") {
    const std::string src =
        "contract A {\n  function f(address payable a) public {\n"
        "    if (!a.send(1)) {\n      revert(\n        \"no\");\n    }\n  }\n}\n";
    std::vector<InjectionSite> w =
        OfKind(Locate(src, BugType::kUnhandledException), SiteKind::kWeaken);
    REQUIRE(w.size() == 1);
    std::string out = ApplyWeakening(src, w[0]);
    CHECK(out.find("      //revert(\n        //\"no\");\n    }") !=
          std::string::npos);
    CHECK(Validate(out).empty());
  }
}

TEST_CASE("snippet insertions only add text") {
  for (const auto& path : CorpusFiles()) {
    const std::string src = ReadFile(path);
    for (BugType type : kAllBugTypes) {
      InjectionProfile p = Locate(src, type);
      for (const InjectionSite& site : p.sites) {
        if (site.kind != SiteKind::kSnippet) continue;
        const std::string body = "uint256 probe_x = 1;";
        std::string out = ApplySnippet(src, site, body);
        REQUIRE(out.size() > src.size());
        REQUIRE(out.compare(0, site.offset, src, 0, site.offset) == 0);
        const std::size_t tail = src.size() - site.offset;
        REQUIRE(out.compare(out.size() - tail, tail, src, site.offset, tail) == 0);
        std::string added = out.substr(site.offset, out.size() - src.size());
        std::size_t at = added.find(body);
        REQUIRE(at != std::string::npos);
        CHECK(AllBlank(added.substr(0, at) + added.substr(at + body.size())));
      }
    }
  }
}

TEST_CASE("corpus injections stay valid and logged") {
  for (const auto& path : CorpusFiles()) {
    const std::string src = ReadFile(path);
    const std::set<std::string> before = [&] {
      std::vector<std::string> ids = CollectIdentifiers(Tokenize(src));
      return std::set<std::string>(ids.begin(), ids.end());
    }();
    for (BugType type : kAllBugTypes) {
      CAPTURE(path.filename().string());
      CAPTURE(BugTypeName(type));
      InjectionProfile p = Locate(src, type);
      InjectionResult r = InjectAll(src, p, DefaultPool(), 0, path.string());
      std::vector<Diagnostic> diags = Validate(r.buggy_source);
      CHECK(diags.empty());
      REQUIRE(r.log.size() == p.sites.size());
      CHECK(testing::CheckLogConfinement(src, r.buggy_source, r.log) == "");
      CHECK(r.counter_end >= r.counter_start + static_cast<int>(r.log.size()));

      LineMap lines(r.buggy_source);
      std::set<std::string> ids;
      for (std::size_t i = 0; i < r.log.size(); ++i) {
        const BugLogEntry& e = r.log[i];
        CHECK(ids.insert(e.bug_id).second);
        CHECK(e.bug_type == type);
        CHECK(e.file == path.string());
        CHECK(e.byte_span.end <= r.buggy_source.size());
        CHECK(e.start_line == lines.LineOf(e.byte_span.start));
        CHECK(e.end_line == lines.LineOf(e.byte_span.end - 1));
        const std::string text =
            r.buggy_source.substr(e.byte_span.start, e.byte_span.size());
        switch (p.sites[i].kind) {
          case SiteKind::kSnippet: {
            CHECK(e.approach == Approach::kFullSnippet);
            CHECK(e.snippet_id.has_value());
            // The bug's own text starts and ends on line boundaries.
            CHECK((e.byte_span.start == 0 ||
                   r.buggy_source[e.byte_span.start - 1] == '\n'));
            CHECK((e.byte_span.end == r.buggy_source.size() ||
                   r.buggy_source[e.byte_span.end] == '\n'));
            const BugSnippet* s = DefaultPool().FindSnippet(*e.snippet_id);
            REQUIRE(s != nullptr);
            CHECK(s->form == p.sites[i].form);
            // Fresh names: the bug's identifier did not exist before.
            CHECK(before.count(e.bug_id) == 0);
            std::string fallback = *e.snippet_id;
            std::replace(fallback.begin(), fallback.end(), '-', '_');
            if (e.bug_id.rfind(fallback + "_", 0) != 0) {
              CHECK(text.find(e.bug_id) != std::string::npos);
            }
            break;
          }
          case SiteKind::kTransform:
            CHECK(e.approach == Approach::kCodeTransformation);
            CHECK_FALSE(e.snippet_id.has_value());
            break;
          case SiteKind::kWeaken:
            CHECK(e.approach == Approach::kWeakenSecurity);
            CHECK(text.find("//") != std::string::npos);
            break;
        }
      }
    }
  }
}

TEST_CASE("confinement oracle notices unlogged edits") {
  const std::string src = Fixture("withdraw.sol");
  InjectionResult r =
      InjectAll(src, Locate(src, BugType::kUnhandledException), DefaultPool(), 0);
  REQUIRE(testing::CheckLogConfinement(src, r.buggy_source, r.log).empty());
  // A stray statement before the contract.
  std::string stray = r.buggy_source;
  stray.insert(stray.find("contract"), "uint x;\n");
  std::vector<BugLogEntry> shifted = r.log;
  for (BugLogEntry& e : shifted) {
    ++e.start_line;
    ++e.end_line;
    e.byte_span.start += 8;
    e.byte_span.end += 8;
  }
  CHECK_FALSE(testing::CheckLogConfinement(src, stray, shifted).empty());
  // A log entry that is dropped leaves its text unaccounted for.
  std::vector<BugLogEntry> partial(r.log.begin() + 1, r.log.end());
  CHECK_FALSE(testing::CheckLogConfinement(src, r.buggy_source, partial).empty());
  // Lines that do not hold the bytes.
  std::vector<BugLogEntry> wrong = r.log;
  ++wrong[0].start_line;
  ++wrong[0].end_line;
  CHECK_FALSE(testing::CheckLogConfinement(src, r.buggy_source, wrong).empty());
}

TEST_CASE("injected names never collide with existing ones") {
  const BugSnippet& first =
      *DefaultPool().SnippetsOf(BugType::kTimestampDependency,
                                SnippetForm::kFunctionDefinition)[0];
  const std::string taken = DeclaredNames(first, Instantiate(first, 0)).at(0);
  const std::string src = "contract A {\n  uint " + taken + ";\n}\n";
  InjectionProfile p = Locate(src, BugType::kTimestampDependency);
  REQUIRE(p.sites.size() == 2);
  InjectionResult r = InjectAll(src, p, DefaultPool(), 0);
  CHECK(r.log[0].bug_id != taken);
  CHECK(r.counter_end == 3);
  CHECK(Validate(r.buggy_source).empty());
  CHECK(Count(r.buggy_source, taken) == 1);
}

TEST_CASE("counter starts where asked") {
  const std::string src = Fixture("egame.sol");
  InjectionProfile p = Locate(src, BugType::kReentrancy);
  InjectionResult r = InjectAll(src, p, DefaultPool(), 36);
  REQUIRE(!r.log.empty());
  CHECK(r.counter_start == 36);
  CHECK(r.counter_end >= 36 + static_cast<int>(r.log.size()));
  CHECK(r.log.front().bug_id.find("36") != std::string::npos);
  CHECK(Validate(r.buggy_source).empty());
}

TEST_CASE("required context is declared once per contract") {
  const std::string src =
      "contract A {\n  uint a;\n  uint b;\n  uint c;\n  uint d;\n  uint e;\n"
      "  uint f;\n  uint g;\n}\n";
  InjectionProfile p = Locate(src, BugType::kUnhandledException);
  std::vector<const BugSnippet*> fns = DefaultPool().SnippetsOf(
      BugType::kUnhandledException, SnippetForm::kFunctionDefinition);
  REQUIRE(p.sites.size() > fns.size());
  REQUIRE(!fns[0]->required_context.empty());
  InjectionResult r = InjectAll(src, p, DefaultPool(), 0);
  CHECK(Validate(r.buggy_source).empty());
  std::vector<std::string> ctx =
      ContextNames(*fns[0], Instantiate(fns[0]->required_context, 0, 0));
  REQUIRE(ctx.size() == 1);
  CHECK(Count(r.buggy_source, "address payable " + ctx[0]) == 1);
  CHECK(Count(r.buggy_source, ctx[0] + ".send") == 2);
}

TEST_CASE("same input gives the same output") {
  const std::string src = ReadFile(CorpusFiles().back());
  for (BugType type : kAllBugTypes) {
    InjectionProfile p = Locate(src, type);
    InjectionResult a = InjectAll(src, p, DefaultPool(), 7, "x.sol");
    InjectionResult b = InjectAll(src, Locate(src, type), DefaultPool(), 7, "x.sol");
    CHECK(a.buggy_source == b.buggy_source);
    CHECK(a.log == b.log);
    CHECK(a.counter_end == b.counter_end);
  }
}

TEST_CASE("profile must match the source") {
  const std::string src = Fixture("withdraw.sol");
  InjectionProfile p = Locate(src, BugType::kUnhandledException);
  CHECK_THROWS_AS(InjectAll(src + " ", p, DefaultPool(), 0), StaleProfile);
}

TEST_CASE("overlapping edits are rejected") {
  const std::string src = Fixture("sendto.sol");
  InjectionProfile p = Locate(src, BugType::kTxOrigin);
  std::vector<InjectionSite> t = OfKind(p, SiteKind::kTransform);
  REQUIRE(t.size() == 1);
  p.sites = {t[0], t[0]};
  CHECK_THROWS_AS(InjectAll(src, p, DefaultPool(), 0), EditConflict);
}

TEST_CASE("bug log serialization") {
  BugLog log;
  CHECK(EmitBugLog(log, BugLogFormat::kJson) == "[]\n");
  CHECK(ParseBugLog("[]", BugLogFormat::kJson).empty());

  const std::string src = Fixture("withdraw.sol");
  InjectionResult r = InjectAll(src, Locate(src, BugType::kUnhandledException),
                                DefaultPool(), 3, "dir/with,comma \"q\".sol");
  const std::string json = EmitBugLog(r.log, BugLogFormat::kJson);
  nlohmann::json doc = nlohmann::json::parse(json);
  REQUIRE(doc.size() == r.log.size());
  const std::set<std::string> fields = {"bugId",   "bugType",   "approach",
                                        "snippetId", "file",    "startLine",
                                        "endLine", "byteStart", "byteEnd"};
  for (const auto& obj : doc) {
    std::set<std::string> keys;
    for (const auto& [k, v] : obj.items()) keys.insert(k);
    CHECK(keys == fields);
  }
  CHECK(ParseBugLog(json, BugLogFormat::kJson) == r.log);
  const std::string csv = EmitBugLog(r.log, BugLogFormat::kCsv);
  CHECK(csv.rfind("bugId,bugType,approach,snippetId,file,startLine,endLine,"
                  "byteStart,byteEnd\n", 0) == 0);
  CHECK(ParseBugLog(csv, BugLogFormat::kCsv) == r.log);

  const auto dir = std::filesystem::temp_directory_path() / "sbs_buglog_test";
  std::filesystem::create_directories(dir);
  WriteBugLog(dir / "a.json", r.log, BugLogFormat::kJson);
  WriteBugLog(dir / "a.csv", r.log, BugLogFormat::kCsv);
  CHECK(ReadBugLog(dir / "a.json") == r.log);
  CHECK(ReadBugLog(dir / "a.csv") == r.log);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(ReadBugLog(dir / "missing.json"), IoError);
}

TEST_CASE("malformed bug logs") {
  CHECK_THROWS_AS(ParseBugLog("[", BugLogFormat::kJson), FormatError);
  CHECK_THROWS_AS(ParseBugLog("{}", BugLogFormat::kJson), FormatError);
  const std::string good =
      R"({"bugId":"b1","bugType":"TOD","approach":"FullSnippet",)"
      R"("snippetId":"s","file":"f.sol","startLine":2,"endLine":3,)"
      R"("byteStart":4,"byteEnd":9})";
  CHECK(ParseBugLog("[" + good + "]", BugLogFormat::kJson).size() == 1);
  std::string bad_type = good;
  bad_type.replace(bad_type.find("TOD"), 3, "Nope");
  CHECK_THROWS_AS(ParseBugLog("[" + bad_type + "]", BugLogFormat::kJson),
                  FormatError);
  std::string missing = good;
  missing.replace(missing.find(R"("file":"f.sol",)"), 15, "");
  CHECK_THROWS_AS(ParseBugLog("[" + missing + "]", BugLogFormat::kJson),
                  FormatError);
  std::string backwards = good;
  backwards.replace(backwards.find(R"("endLine":3)"), 11, R"("endLine":1)");
  CHECK_THROWS_AS(ParseBugLog("[" + backwards + "]", BugLogFormat::kJson),
                  FormatError);
  CHECK_THROWS_AS(ParseBugLog("bugId,bugType\n", BugLogFormat::kCsv),
                  FormatError);
  try {
    ParseBugLog("bugId,bugType,approach,snippetId,file,startLine,endLine,"
                "byteStart,byteEnd\nb,TOD,FullSnippet,,f,1,1,0,x\n",
                BugLogFormat::kCsv);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
}

}  // namespace
}  // namespace solbugsmith
