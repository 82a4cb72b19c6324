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

/// Smallest power of two >= n (and >= 1).
std::size_t next_pow2(std::size_t n);

/// |X_k|^2 for k = 0 .. N_fft/2 where N_fft = next_pow2(input size) and the
/// input is zero-padded to N_fft.
std::vector<double> power_spectrum(std::span<const double> windowed);

/// Linear (non-circular) autocorrelation r[0..max_lag] computed through a
/// zero-padded FFT of size >= 2 * input size.
std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag);

}  // namespace nlconf::dsp
