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

#ifndef SOLBUGSMITH_SOURCE_H_
#define SOLBUGSMITH_SOURCE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace solbugsmith {

// Half-open byte range [start, end) plus the 1-based lines of its first and
// last byte. An empty span reports the line of `start` for both.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  int start_line = 1;
  int end_line = 1;

  std::size_t size() const { return end - start; }
  bool Contains(const Span& other) const {
    return start <= other.start && other.end <= end;
  }
  friend bool operator==(const Span&, const Span&) = default;
};

// Offsets of line starts in a text. Line numbers are 1-based.
class LineMap {
 public:
  LineMap() = default;
  explicit LineMap(std::string_view text);

  // Line containing `offset`; offset == length maps to the last line.
  // Throws OutOfRange past the end.
  int LineOf(std::size_t offset) const;
  // 1-based column of `offset` within its line.
  int ColumnOf(std::size_t offset) const;
  std::size_t LineStart(int line) const;
  int line_count() const { return static_cast<int>(starts_.size()); }
  std::size_t text_size() const { return size_; }
  const std::vector<std::size_t>& starts() const { return starts_; }

  // Span over [start, end) with its line numbers filled in.
  Span MakeSpan(std::size_t start, std::size_t end) const;

 private:
  std::vector<std::size_t> starts_{0};
  std::size_t size_ = 0;
};

// 1-based line of the first byte of each element of a top-level JSON array,
// for error messages. Stops at the first structural surprise.
std::vector<int> JsonArrayElementLines(std::string_view json);

// Stable 64-bit FNV-1a digest, used to tie derived artifacts to their source.
std::uint64_t ContentHash(std::string_view text);

// Returns the offset of the first byte that breaks UTF-8 well-formedness, or
// npos when the text is valid.
std::size_t FindInvalidUtf8(std::string_view text);

}  // namespace solbugsmith

#endif  // SOLBUGSMITH_SOURCE_H_
