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

#include <cmath>

#include "nlconf/dsp/lpc.hpp"
#include "nlconf/error.hpp"

namespace nlconf::dsp {

LpcResult lpc(std::span<const double> windowed, int order) {
  if (order < 1) fail(ErrorCode::InvalidArgument, "LPC order must be positive");
  const auto p = static_cast<std::size_t>(order);
  if (windowed.size() <= p) fail(ErrorCode::SeriesTooShort, "frame shorter than LPC order");

  std::vector<double> r(p + 1, 0.0);
  for (std::size_t lag = 0; lag <= p; ++lag) {
    double acc = 0.0;
    for (std::size_t n = lag; n < windowed.size(); ++n) acc += windowed[n] * windowed[n - lag];
    r[lag] = acc;
  }
  if (!(r[0] > 0.0) || !std::isfinite(r[0])) fail(ErrorCode::DegenerateFrame, "zero-energy frame");

  // Levinson-Durbin on the normal equations; a holds predictor coefficients.
  std::vector<double> a(p + 1, 0.0), prev(p + 1, 0.0);
  double error = r[0];
  for (std::size_t i = 1; i <= p; ++i) {
    double acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc -= a[j] * r[i - j];
    const double k = error > 0.0 ? acc / error : 0.0;
    prev = a;
    a[i] = k;
    for (std::size_t j = 1; j < i; ++j) a[j] = prev[j] - k * prev[i - j];
    error *= (1.0 - k * k);
    if (error <= 0.0) error = 0.0;
  }

  LpcResult result;
  result.order = order;
  result.coefficients.assign(a.begin() + 1, a.end());
  result.gain = error;
  for (double c : result.coefficients)
    if (!std::isfinite(c)) fail(ErrorCode::NumericalFailure, "non-finite LPC coefficient");
  return result;
}

std::vector<double> prediction_polynomial(const LpcResult& result) {
  std::vector<double> poly;
  poly.reserve(result.coefficients.size() + 1);
  poly.push_back(1.0);
  for (double c : result.coefficients) poly.push_back(-c);
  return poly;
}

}  // namespace nlconf::dsp
