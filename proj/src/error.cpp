// Copyright 2026 The nlconf Authors. All Rights Reserved.
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

#include "nlconf/error.hpp"

namespace nlconf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::SegmentTooShort: return "SegmentTooShort";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::NoConfirmations: return "NoConfirmations";
    case ErrorCode::SplitImpossible: return "SplitImpossible";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::MissingClass: return "MissingClass";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptModel: return "CorruptModel";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::DegenerateCovariance: return "DegenerateCovariance";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateFrame:
    case ErrorCode::DegenerateCovariance:
    case ErrorCode::NumericalFailure:
    case ErrorCode::ConvergenceFailure:
      return ErrorCategory::Numerical;
    case ErrorCode::InvalidArgument:
    case ErrorCode::ConfigError:
      return ErrorCategory::Config;
    default:
      return ErrorCategory::Data;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace nlconf
