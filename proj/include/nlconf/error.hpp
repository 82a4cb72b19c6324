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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nlconf {

enum class ErrorCode {
  // data
  UnsupportedFormat,
  CorruptFile,
  ParseError,
  RangeError,
  SegmentTooShort,
  SeriesTooShort,
  NoConfirmations,
  SplitImpossible,
  LengthMismatch,
  DimensionMismatch,
  TooFewSamples,
  SingleClass,
  MissingClass,
  VersionMismatch,
  CorruptModel,
  IoError,
  // numerical
  DegenerateFrame,
  DegenerateCovariance,
  NumericalFailure,
  ConvergenceFailure,
  // configuration
  InvalidArgument,
  ConfigError,
};

enum class ErrorCategory { Config, Data, Numerical };

std::string_view to_string(ErrorCode code);
ErrorCategory category_of(ErrorCode code);

/// Exception type thrown by every nlconf module. The code identifies the
/// failure; the category groups codes for process exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace nlconf
