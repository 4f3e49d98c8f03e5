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

#ifndef SOLBUGSMITH_AST_JSON_H_
#define SOLBUGSMITH_AST_JSON_H_

#include <nlohmann/json.hpp>

#include "solbugsmith/ast.h"

namespace solbugsmith {

nlohmann::json SpanToJson(const Span& span);

// Tree of {kind, span, children} objects, plus a name where one exists.
nlohmann::json AstToJson(const SourceUnit& unit);

}  // namespace solbugsmith

#endif  // SOLBUGSMITH_AST_JSON_H_
