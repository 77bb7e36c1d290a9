// Copyright 2026 The QPN Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPN_ERROR_HPP
#define QPN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpn {

enum class ErrorKind {
  // Tables and distributions.
  NegativeMass,
  MassNotOne,
  ShapeMismatch,
  UnknownVariable,
  UnknownLevel,
  ZeroProbabilityEvidence,
  SupportMismatch,
  DuplicateVariable,
  // Graphs.
  CycleDetected,
  DuplicateEdge,
  InvalidEdge,
  OverlappingSets,
  // Dependence checks.
  ContextOverlap,
  ZeroColumn,
  SupportTooLarge,
  NotMlrp,
  IsMlrp,
  // Inference.
  BadEvidenceSign,
  TooManyParents,
  NoSuchEdge,
  WouldCreateCycle,
  Stuck,
  // Scenarios and I/O.
  BadProbability,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace qpn

#endif  // QPN_ERROR_HPP
