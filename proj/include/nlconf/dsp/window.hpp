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

#include <cstddef>
#include <span>
#include <vector>

namespace nlconf::dsp {

enum class WindowKind { BlackmanHarris4, Hann };

/// Symmetric analysis window. Coefficients satisfy w[n] == w[N-1-n] exactly.
class WindowFunction {
 public:
  WindowFunction(WindowKind kind, std::size_t length);

  WindowKind kind() const { return kind_; }
  std::size_t length() const { return coefficients_.size(); }
  std::span<const double> coefficients() const { return coefficients_; }

 private:
  WindowKind kind_;
  std::vector<double> coefficients_;
};

/// Shared immutable 400-sample window of the given kind.
const WindowFunction& frame_window(WindowKind kind);

std::vector<double> apply_window(std::span<const double> frame, const WindowFunction& window);

}  // namespace nlconf::dsp
