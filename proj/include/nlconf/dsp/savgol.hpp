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

#include <span>
#include <vector>

namespace nlconf::dsp {

/// y_t = (1/h) * sum_i a_i * x_{t+i}, i = -(n-1)/2 .. (n-1)/2.
struct SavitzkyGolayFilter {
  std::vector<double> coefficients;
  double normalization = 1.0;

  std::size_t length() const { return coefficients.size(); }
  std::size_t half_width() const { return coefficients.size() / 2; }

  /// 7-point quadratic fit, first derivative: (-3..3) / 28.
  static SavitzkyGolayFilter first_derivative();
  /// 7-point quadratic fit, second derivative: (5,0,-3,-4,-3,0,5) / 42.
  static SavitzkyGolayFilter second_derivative();
};

/// Same-length output; samples beyond either end replicate the edge value.
std::vector<double> savitzky_golay(std::span<const double> series, const SavitzkyGolayFilter& filter);

}  // namespace nlconf::dsp
