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

#include "solbugsmith/ast_json.h"

namespace solbugsmith {
namespace {

using nlohmann::json;

json StmtToJson(const Stmt& s) {
  json node = {{"kind", StmtKindName(s.kind)}, {"span", SpanToJson(s.span)}};
  if (s.opaque) node["opaque"] = true;
  json children = json::array();
  for (const Stmt& c : s.children) children.push_back(StmtToJson(c));
  node["children"] = std::move(children);
  return node;
}

json MemberToJson(const Member& m) {
  json node = {{"kind", MemberKindName(m.kind)},
               {"span", SpanToJson(m.span)}};
  if (!m.name.empty()) node["name"] = m.name;
  json children = json::array();
  if (m.function) {
    for (const Stmt& s : m.function->statements) {
      children.push_back(StmtToJson(s));
    }
  }
  node["children"] = std::move(children);
  return node;
}

}  // namespace

json SpanToJson(const Span& span) {
  return {{"start", span.start},
          {"end", span.end},
          {"startLine", span.start_line},
          {"endLine", span.end_line}};
}

json AstToJson(const SourceUnit& unit) {
  json children = json::array();
  for (const ContractDef& c : unit.contracts) {
    json members = json::array();
    for (const Member& m : c.members) members.push_back(MemberToJson(m));
    std::string_view kind = c.kind == ContractKind::kInterface ? "interface"
                            : c.kind == ContractKind::kLibrary ? "library"
                                                               : "contract";
    children.push_back({{"kind", kind},
                        {"name", c.name},
                        {"span", SpanToJson(c.span)},
                        {"children", std::move(members)}});
  }
  json root = {{"kind", "sourceUnit"},
               {"span", SpanToJson(unit.line_map.MakeSpan(
                            0, unit.raw_text.size()))},
               {"children", std::move(children)}};
  if (unit.pragma) root["pragma"] = *unit.pragma;
  return root;
}

}  // namespace solbugsmith
