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

#include "qpn/error.hpp"
#include "qpn/sign.hpp"

namespace qpn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeMass: return "NegativeMass";
    case ErrorKind::MassNotOne: return "MassNotOne";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::UnknownLevel: return "UnknownLevel";
    case ErrorKind::ZeroProbabilityEvidence: return "ZeroProbabilityEvidence";
    case ErrorKind::SupportMismatch: return "SupportMismatch";
    case ErrorKind::DuplicateVariable: return "DuplicateVariable";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::InvalidEdge: return "InvalidEdge";
    case ErrorKind::OverlappingSets: return "OverlappingSets";
    case ErrorKind::ContextOverlap: return "ContextOverlap";
    case ErrorKind::ZeroColumn: return "ZeroColumn";
    case ErrorKind::SupportTooLarge: return "SupportTooLarge";
    case ErrorKind::NotMlrp: return "NotMlrp";
    case ErrorKind::IsMlrp: return "IsMlrp";
    case ErrorKind::BadEvidenceSign: return "BadEvidenceSign";
    case ErrorKind::TooManyParents: return "TooManyParents";
    case ErrorKind::NoSuchEdge: return "NoSuchEdge";
    case ErrorKind::WouldCreateCycle: return "WouldCreateCycle";
    case ErrorKind::Stuck: return "Stuck";
    case ErrorKind::BadProbability: return "BadProbability";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, std::string(to_string(kind)) + ": " + message);
}

std::string_view to_string(Sign s) {
  switch (s) {
    case Sign::Plus: return "+";
    case Sign::Minus: return "-";
    case Sign::Zero: return "0";
    case Sign::Question: return "?";
  }
  return "?";
}

std::optional<Sign> parse_sign(std::string_view text) {
  if (text == "+") return Sign::Plus;
  if (text == "-") return Sign::Minus;
  if (text == "0") return Sign::Zero;
  if (text == "?") return Sign::Question;
  return std::nullopt;
}

}  // namespace qpn
