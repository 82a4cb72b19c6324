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

#include <algorithm>

#include "nlconf/dsp/savgol.hpp"
#include "nlconf/error.hpp"

namespace nlconf::dsp {

SavitzkyGolayFilter SavitzkyGolayFilter::first_derivative() {
  return {{-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0}, 28.0};
}

SavitzkyGolayFilter SavitzkyGolayFilter::second_derivative() {
  return {{5.0, 0.0, -3.0, -4.0, -3.0, 0.0, 5.0}, 42.0};
}

std::vector<double> savitzky_golay(std::span<const double> series, const SavitzkyGolayFilter& filter) {
  const std::size_t n = filter.length();
  if (n == 0 || n % 2 == 0) fail(ErrorCode::InvalidArgument, "Savitzky-Golay length must be odd");
  if (series.size() < n)
    fail(ErrorCode::SeriesTooShort, "series of length " + std::to_string(series.size()) +
                                        " shorter than filter length " + std::to_string(n));
  const auto half = static_cast<std::ptrdiff_t>(filter.half_width());
  const auto last = static_cast<std::ptrdiff_t>(series.size()) - 1;
  std::vector<double> out(series.size());
  for (std::ptrdiff_t t = 0; t <= last; ++t) {
    double acc = 0.0;
    for (std::ptrdiff_t i = -half; i <= half; ++i) {
      const auto idx = std::clamp<std::ptrdiff_t>(t + i, 0, last);
      acc += filter.coefficients[static_cast<std::size_t>(i + half)] * series[static_cast<std::size_t>(idx)];
    }
    out[static_cast<std::size_t>(t)] = acc / filter.normalization;
  }
  return out;
}

}  // namespace nlconf::dsp
