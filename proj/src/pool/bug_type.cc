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

#include "solbugsmith/bug_type.h"

#include <string_view>

namespace solbugsmith {
namespace {

template <typename E, std::size_t N>
std::optional<E> Lookup(std::string_view name,
                        const std::array<E, N>& values,
                        std::string_view (*name_of)(E)) {
  for (E v : values) {
    if (name_of(v) == name) return v;
  }
  return std::nullopt;
}

}  // namespace

std::string_view BugTypeName(BugType type) {
  switch (type) {
    case BugType::kReentrancy:
      return "Reentrancy";
    case BugType::kTimestampDependency:
      return "TimestampDependency";
    case BugType::kUncheckedSend:
      return "UncheckedSend";
    case BugType::kUnhandledException:
      return "UnhandledException";
    case BugType::kTOD:
      return "TOD";
    case BugType::kIntegerOverflowUnderflow:
      return "IntegerOverflowUnderflow";
    case BugType::kTxOrigin:
      return "TxOrigin";
  }
  return "";
}

std::optional<BugType> ParseBugType(std::string_view name) {
  return Lookup(name, kAllBugTypes, &BugTypeName);
}

std::string_view SnippetFormName(SnippetForm form) {
  switch (form) {
    case SnippetForm::kSimpleStatement:
      return "SimpleStatement";
    case SnippetForm::kNonFunctionBlock:
      return "NonFunctionBlock";
    case SnippetForm::kFunctionDefinition:
      return "FunctionDefinition";
  }
  return "";
}

std::optional<SnippetForm> ParseSnippetForm(std::string_view name) {
  return Lookup(name, kAllSnippetForms, &SnippetFormName);
}

std::string_view ApproachName(Approach approach) {
  switch (approach) {
    case Approach::kFullSnippet:
      return "FullSnippet";
    case Approach::kCodeTransformation:
      return "CodeTransformation";
    case Approach::kWeakenSecurity:
      return "WeakenSecurity";
  }
  return "";
}

std::optional<Approach> ParseApproach(std::string_view name) {
  static constexpr std::array<Approach, 3> kAll = {
      Approach::kFullSnippet, Approach::kCodeTransformation,
      Approach::kWeakenSecurity};
  return Lookup(name, kAll, &ApproachName);
}

}  // namespace solbugsmith
