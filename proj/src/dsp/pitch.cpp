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

#include "nlconf/corpus.hpp"
#include "nlconf/dsp/pitch.hpp"
#include "nlconf/dsp/spectrum.hpp"
#include "nlconf/error.hpp"

namespace nlconf::dsp {

PitchYinFft::PitchYinFft(std::size_t frame_length, double sample_rate, WindowKind window, YinConfig config)
    : frame_length_(frame_length), sample_rate_(sample_rate), config_(config) {
  if (frame_length < 8) fail(ErrorCode::InvalidArgument, "frame too short for pitch estimation");
  if (!(config_.min_hz > 0.0 && config_.min_hz < config_.max_hz))
    fail(ErrorCode::InvalidArgument, "invalid pitch search band");

  min_lag_ = std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(sample_rate / config_.max_hz)));
  const auto band_max = static_cast<std::size_t>(std::ceil(sample_rate / config_.min_hz));
  const auto frame_max = static_cast<std::size_t>(config_.max_lag_fraction * static_cast<double>(frame_length));
  max_lag_ = std::min({band_max, frame_max, frame_length - 2});
  if (max_lag_ <= min_lag_) fail(ErrorCode::InvalidArgument, "frame too short for the pitch search band");

  const WindowFunction w(window, frame_length);
  window_acf_ = autocorrelation(w.coefficients(), max_lag_ + 1);
  const double r0 = window_acf_[0];
  for (double& v : window_acf_) v /= r0;
}

std::vector<double> PitchYinFft::cmndf(std::span<const double> windowed) const {
  if (windowed.size() != frame_length_)
    fail(ErrorCode::LengthMismatch, "pitch estimator configured for " + std::to_string(frame_length_) + " samples");
  const std::size_t last = max_lag_ + 1;
  std::vector<double> d(last + 1, 1.0);
  const auto r = autocorrelation(windowed, last);
  if (!(r[0] > 0.0)) return d;

  double running = 0.0;
  for (std::size_t tau = 1; tau <= last; ++tau) {
    const double diff = 1.0 - (r[tau] / r[0]) / window_acf_[tau];
    running += diff;
    d[tau] = running > 0.0 ? diff * static_cast<double>(tau) / running : 1.0;
  }
  return d;
}

double PitchYinFft::operator()(std::span<const double> windowed) const {
  const auto d = cmndf(windowed);

  std::size_t best = 0;
  for (std::size_t tau = min_lag_; tau <= max_lag_; ++tau) {
    if (d[tau] < config_.threshold && d[tau] <= d[tau - 1] && d[tau] <= d[tau + 1]) {
      best = tau;
      break;
    }
  }
  if (best == 0) {
    std::size_t arg = min_lag_;
    for (std::size_t tau = min_lag_ + 1; tau <= max_lag_; ++tau)
      if (d[tau] < d[arg]) arg = tau;
    if (!(d[arg] < config_.fallback_threshold)) return 0.0;
    best = arg;
  }

  double offset = 0.0;
  const double prev = d[best - 1], here = d[best], next = d[best + 1];
  const double curvature = prev - 2.0 * here + next;
  if (curvature > 0.0) offset = std::clamp(0.5 * (prev - next) / curvature, -0.5, 0.5);
  return sample_rate_ / (static_cast<double>(best) + offset);
}

double pitch_yin_fft(std::span<const double> windowed) {
  static const PitchYinFft estimator(kFrameLength, kSampleRate);
  return estimator(windowed);
}

}  // namespace nlconf::dsp
