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

namespace nlconf::dsp {

/// First two formants in Hz; 0 marks an absent formant.
struct FormantPair {
  double f1 = 0.0;
  double f2 = 0.0;

  bool operator==(const FormantPair&) const = default;
};

struct FormantLimits {
  double min_frequency_hz = 90.0;
  double max_bandwidth_hz = 400.0;
};

FormantPair formants(std::span<const std::complex<double>> roots, double sample_rate,
                     const FormantLimits& limits = {});

/// lpc -> polynomial_roots -> fix_roots -> formants on a Hann windowed frame.
/// A zero-energy frame yields (0, 0).
FormantPair estimate_formants(std::span<const double> windowed, double sample_rate);

}  // namespace nlconf::dsp
