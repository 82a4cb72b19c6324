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
#include <cmath>
#include <numbers>
#include <vector>

#include "nlconf/dsp/formants.hpp"
#include "nlconf/dsp/lpc.hpp"
#include "nlconf/dsp/roots.hpp"
#include "nlconf/error.hpp"

namespace nlconf::dsp {

FormantPair formants(std::span<const std::complex<double>> roots, double sample_rate, const FormantLimits& limits) {
  std::vector<double> candidates;
  for (const auto& r : roots) {
    const double angle = std::arg(r);
    if (!(angle > 0.0 && angle < std::numbers::pi)) continue;
    const double freq = angle * sample_rate / (2.0 * std::numbers::pi);
    const double bandwidth = -(sample_rate / std::numbers::pi) * std::log(std::abs(r));
    if (freq < limits.min_frequency_hz || bandwidth > limits.max_bandwidth_hz) continue;
    candidates.push_back(freq);
  }
  std::sort(candidates.begin(), candidates.end());
  FormantPair out;
  if (!candidates.empty()) out.f1 = candidates[0];
  if (candidates.size() > 1) out.f2 = candidates[1];
  return out;
}

FormantPair estimate_formants(std::span<const double> windowed, double sample_rate) {
  try {
    const auto poly = prediction_polynomial(lpc(windowed));
    const auto roots = fix_roots(polynomial_roots(poly));
    return formants(roots, sample_rate);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateFrame) return {};
    throw;
  }
}

}  // namespace nlconf::dsp
