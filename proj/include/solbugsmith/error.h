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

#ifndef SOLBUGSMITH_ERROR_H_
#define SOLBUGSMITH_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace solbugsmith {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LexError : public Error {
 public:
  LexError(int line, int column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column),
        message_(message) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string expected, std::string found)
      : Error(std::to_string(line) + ":" + std::to_string(column) +
              ": expected " + expected + ", found " + found),
        line_(line),
        column_(column),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  int line_;
  int column_;
  std::string expected_;
  std::string found_;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class PoolError : public Error {
 public:
  PoolError(std::string entry_id, std::string reason)
      : Error("pool entry '" + entry_id + "': " + reason),
        entry_id_(std::move(entry_id)),
        reason_(std::move(reason)) {}

  const std::string& entry_id() const { return entry_id_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string entry_id_;
  std::string reason_;
};

// The profile handed to the injector was derived from different source text.
class StaleProfile : public Error {
 public:
  using Error::Error;
};

class EditConflict : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  FormatError(int line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}

  int line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  int line_;
  std::string reason_;
};

class ScopeError : public Error {
 public:
  using Error::Error;
};

class MissingThreshold : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class MissingBugLog : public Error {
 public:
  using Error::Error;
};

}  // namespace solbugsmith

#endif  // SOLBUGSMITH_ERROR_H_
