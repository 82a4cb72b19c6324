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

#include <complex>
#include <span>
#include <vector>

namespace nlconf::dsp {

/// All complex roots of p[0] z^d + p[1] z^(d-1) + ... + p[d]. Roots are
/// refined by Newton steps and must satisfy |p(r)| < 1e-6 * sum_i |p_i||r|^(d-i),
/// otherwise NumericalFailure is thrown.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coefficients);

/// Evaluates the polynomial (highest power first) at z.
std::complex<double> evaluate_polynomial(std::span<const double> coefficients, std::complex<double> z);

/// Reflects roots outside the unit circle to 1/conj(r).
std::vector<std::complex<double>> fix_roots(std::span<const std::complex<double>> roots);

}  // namespace nlconf::dsp
