// Copyright 2026 The bddppl Authors
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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bddppl {

/// Location of a construct in a source file. Lines and columns are 1-based;
/// offsets are byte offsets into the text, `end_offset` exclusive.
struct SourceSpan {
  std::string file;
  int start_line = 1;
  int start_col = 1;
  int end_line = 1;
  int end_col = 1;
  std::size_t begin_offset = 0;
  std::size_t end_offset = 0;

  std::string to_string() const;
};

enum class ErrorKind {
  Parse,
  UnboundIdentifier,
  TypeMismatch,
  RecursiveOrForwardCall,
  UnknownFunction,
  DuplicateFunction,
  ObserveNonBool,
  SizeMismatch,
  BadDistribution,
  ShapeMismatch,
  MissingWeight,
  UnboundFreeVariable,
  OutputTooWide,
  OracleTooLarge,
  NodeLimit,
  BifParse,
  CyclicNetwork,
  MalformedCpt,
  UnknownQueryVariable,
  BadOrder,
  Internal,
};

const char* error_kind_name(ErrorKind kind);

/// Base exception for every user-facing failure in the pipeline.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<SourceSpan> span = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<SourceSpan>& span() const noexcept { return span_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::optional<SourceSpan> span_;
  std::string message_;
};

class ParseError : public Error {
 public:
  ParseError(const SourceSpan& span, const std::string& message,
             std::vector<std::string> expected = {});

  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::vector<std::string> expected_;
};

/// Raised when an internal invariant fails; the CLI maps it to exit code 2.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& message)
      : Error(ErrorKind::Internal, message) {}
};

}  // namespace bddppl
