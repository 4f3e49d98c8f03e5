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

#ifndef SOLBUGSMITH_BUG_TYPE_H_
#define SOLBUGSMITH_BUG_TYPE_H_

#include <array>
#include <optional>
#include <string_view>

namespace solbugsmith {

enum class BugType {
  kReentrancy,
  kTimestampDependency,
  kUncheckedSend,
  kUnhandledException,
  kTOD,
  kIntegerOverflowUnderflow,
  kTxOrigin,
};

inline constexpr std::array<BugType, 7> kAllBugTypes = {
    BugType::kReentrancy,         BugType::kTimestampDependency,
    BugType::kUncheckedSend,      BugType::kUnhandledException,
    BugType::kTOD,                BugType::kIntegerOverflowUnderflow,
    BugType::kTxOrigin,
};

// Serialized names: "Reentrancy", "TimestampDependency", ...
std::string_view BugTypeName(BugType type);
std::optional<BugType> ParseBugType(std::string_view name);

enum class SnippetForm { kSimpleStatement, kNonFunctionBlock, kFunctionDefinition };

inline constexpr std::array<SnippetForm, 3> kAllSnippetForms = {
    SnippetForm::kSimpleStatement,
    SnippetForm::kNonFunctionBlock,
    SnippetForm::kFunctionDefinition,
};

std::string_view SnippetFormName(SnippetForm form);
std::optional<SnippetForm> ParseSnippetForm(std::string_view name);

enum class Approach { kFullSnippet, kCodeTransformation, kWeakenSecurity };

std::string_view ApproachName(Approach approach);
std::optional<Approach> ParseApproach(std::string_view name);

}  // namespace solbugsmith

#endif  // SOLBUGSMITH_BUG_TYPE_H_
