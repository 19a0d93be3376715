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

#include "bddppl/errors.hpp"

namespace bddppl {

std::string SourceSpan::to_string() const {
  std::string out = file.empty() ? std::string("<input>") : file;
  out += ":" + std::to_string(start_line) + ":" + std::to_string(start_col);
  if (end_line != start_line || end_col != start_col) {
    out += "-" + std::to_string(end_line) + ":" + std::to_string(end_col);
  }
  return out;
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::UnboundIdentifier: return "UnboundIdentifier";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::RecursiveOrForwardCall: return "RecursiveOrForwardCall";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::DuplicateFunction: return "DuplicateFunction";
    case ErrorKind::ObserveNonBool: return "ObserveNonBool";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::BadDistribution: return "BadDistribution";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::MissingWeight: return "MissingWeight";
    case ErrorKind::UnboundFreeVariable: return "UnboundFreeVariable";
    case ErrorKind::OutputTooWide: return "OutputTooWide";
    case ErrorKind::OracleTooLarge: return "OracleTooLarge";
    case ErrorKind::NodeLimit: return "NodeLimit";
    case ErrorKind::BifParse: return "BifParseError";
    case ErrorKind::CyclicNetwork: return "CyclicNetwork";
    case ErrorKind::MalformedCpt: return "MalformedCpt";
    case ErrorKind::UnknownQueryVariable: return "UnknownQueryVariable";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

namespace {

std::string render(ErrorKind kind, const std::string& message,
                   const std::optional<SourceSpan>& span) {
  std::string out;
  if (span) out += span->to_string() + ": ";
  out += error_kind_name(kind);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<SourceSpan> span)
    : std::runtime_error(render(kind, message, span)),
      kind_(kind),
      span_(std::move(span)),
      message_(message) {}

ParseError::ParseError(const SourceSpan& span, const std::string& message,
                       std::vector<std::string> expected)
    : Error(ErrorKind::Parse, message, span), expected_(std::move(expected)) {}

}  // namespace bddppl
