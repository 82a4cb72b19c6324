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

struct MfccConfig {
  std::size_t num_coefficients = 13;
  std::size_t num_bands = 40;
  double low_hz = 20.0;
  double high_hz = 7800.0;
  double sample_rate = 16000.0;
  std::size_t frame_length = 400;
  double log_floor = 1e-10;
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// One triangular mel filter, stored sparsely over FFT bins [first_bin,
/// first_bin + weights.size()).
struct MelFilter {
  std::size_t first_bin = 0;
  std::vector<double> weights;
};

/// Power spectrum -> 40 unit-area triangular mel bands -> log -> orthonormal
/// DCT-II. Tables are built once; compute() is const and reentrant.
class MfccExtractor {
 public:
  explicit MfccExtractor(MfccConfig config = {});

  const MfccConfig& config() const { return config_; }
  std::size_t fft_size() const { return fft_size_; }
  std::span<const MelFilter> filters() const { return filters_; }

  std::vector<double> log_band_energies(std::span<const double> windowed) const;
  std::vector<double> cepstrum(std::span<const double> log_energies) const;
  std::vector<double> compute(std::span<const double> windowed) const;

 private:
  MfccConfig config_;
  std::size_t fft_size_;
  std::vector<MelFilter> filters_;
  std::vector<double> dct_;  // num_coefficients x num_bands, row-major
};

/// 13 MFCCs of a Blackman-Harris windowed 400-sample frame.
std::vector<double> mfcc(std::span<const double> windowed);

}  // namespace nlconf::dsp
