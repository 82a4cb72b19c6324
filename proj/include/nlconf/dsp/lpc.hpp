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

inline constexpr int kLpcOrder = 12;

/// Predictor x[n] ~ sum_k coefficients[k-1] * x[n-k]; gain is the residual
/// prediction-error energy.
struct LpcResult {
  int order = kLpcOrder;
  std::vector<double> coefficients;
  double gain = 0.0;
};

/// Autocorrelation method + Levinson-Durbin. Throws DegenerateFrame on a
/// zero-energy frame.
LpcResult lpc(std::span<const double> windowed, int order = kLpcOrder);

/// A(z) * z^p = z^p - c_1 z^(p-1) - ... - c_p, highest power first.
std::vector<double> prediction_polynomial(const LpcResult& result);

}  // namespace nlconf::dsp
