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

#include "nlconf/dsp/window.hpp"

namespace nlconf::dsp {

struct YinConfig {
  double threshold = 0.15;
  double fallback_threshold = 0.5;
  double min_hz = 40.0;
  double max_hz = 600.0;
  // Longest lag searched, as a fraction of the frame length.
  double max_lag_fraction = 0.75;
};

/// Yin pitch with the difference function taken from an FFT autocorrelation.
///
/// The autocorrelation of the windowed frame is divided by the
/// autocorrelation of the analysis window before forming the difference
/// function 1 - r(tau)/r(0). Without this correction the Hann taper biases
/// long lags (low pitches) towards spurious minima. The cumulative mean
/// normalized difference is then searched for its first local minimum below
/// `threshold`, refined by parabolic interpolation; if no lag dips below the
/// threshold the global minimum is accepted only under `fallback_threshold`.
/// Returns 0 for unvoiced or silent frames.
class PitchYinFft {
 public:
  PitchYinFft(std::size_t frame_length, double sample_rate, WindowKind window = WindowKind::Hann,
              YinConfig config = {});

  double operator()(std::span<const double> windowed) const;

  /// Cumulative mean normalized difference d'(tau) for tau = 0..max_lag()+1.
  std::vector<double> cmndf(std::span<const double> windowed) const;

  std::size_t min_lag() const { return min_lag_; }
  std::size_t max_lag() const { return max_lag_; }

 private:
  std::size_t frame_length_;
  double sample_rate_;
  YinConfig config_;
  std::size_t min_lag_;
  std::size_t max_lag_;
  std::vector<double> window_acf_;  // normalized to window_acf_[0] == 1
};

/// Pitch in Hz of a Hann windowed 400-sample frame at 16 kHz (0 = unvoiced).
double pitch_yin_fft(std::span<const double> windowed);

}  // namespace nlconf::dsp
