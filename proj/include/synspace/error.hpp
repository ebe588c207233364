// Copyright 2026 The synspace Authors
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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace synspace {

enum class ErrorKind {
  EmptyField,
  MalformedMatrix,
  UnknownPoint,
  SamePoint,
  NotACloserDistance,
  NegativeDistance,
  NotUltrametric,
  MalformedDendrogram,
  UnknownNode,
  MalformedGraph,
  UnknownVertex,
  MalformedAnnotation,
  NothingToCollapse,
  MalformedTerm,
  RootIdentityViolation,
  SlotResolutionError,
  PartialMapping,
  NotBinary,
  MalformedGauss,
  MoveNotApplicable,
  IncompatibleWithKnotTheory,
  ParseError,
  IoError,
};

constexpr std::string_view kind_name(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::EmptyField: return "EmptyField";
    case ErrorKind::MalformedMatrix: return "MalformedMatrix";
    case ErrorKind::UnknownPoint: return "UnknownPoint";
    case ErrorKind::SamePoint: return "SamePoint";
    case ErrorKind::NotACloserDistance: return "NotACloserDistance";
    case ErrorKind::NegativeDistance: return "NegativeDistance";
    case ErrorKind::NotUltrametric: return "NotUltrametric";
    case ErrorKind::MalformedDendrogram: return "MalformedDendrogram";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::MalformedGraph: return "MalformedGraph";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::MalformedAnnotation: return "MalformedAnnotation";
    case ErrorKind::NothingToCollapse: return "NothingToCollapse";
    case ErrorKind::MalformedTerm: return "MalformedTerm";
    case ErrorKind::RootIdentityViolation: return "RootIdentityViolation";
    case ErrorKind::SlotResolutionError: return "SlotResolutionError";
    case ErrorKind::PartialMapping: return "PartialMapping";
    case ErrorKind::NotBinary: return "NotBinary";
    case ErrorKind::MalformedGauss: return "MalformedGauss";
    case ErrorKind::MoveNotApplicable: return "MoveNotApplicable";
    case ErrorKind::IncompatibleWithKnotTheory: return "IncompatibleWithKnotTheory";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `witness()` carries the offending
/// points/vertices when the failure is an inequality or identity violation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::string> witness = {})
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message),
        kind_(kind),
        detail_(message),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return kind_name(kind_); }
  const std::string& detail() const noexcept { return detail_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

  /// Same error, tagged with the derivation step that raised it.
  Error at_step(std::size_t step) const {
    Error e(kind_, "step " + std::to_string(step) + ": " + detail_, witness_);
    e.step_ = step;
    return e;
  }

 private:
  ErrorKind kind_;
  std::string detail_;
  std::vector<std::string> witness_;
  std::optional<std::size_t> step_;
};

}  // namespace synspace
