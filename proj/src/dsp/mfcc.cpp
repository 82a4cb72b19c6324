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

#include "nlconf/dsp/mfcc.hpp"
#include "nlconf/dsp/spectrum.hpp"
#include "nlconf/error.hpp"

namespace nlconf::dsp {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MfccExtractor::MfccExtractor(MfccConfig config)
    : config_(config), fft_size_(next_pow2(config.frame_length)) {
  if (config_.num_bands == 0 || config_.num_coefficients == 0 ||
      config_.num_coefficients > config_.num_bands)
    fail(ErrorCode::InvalidArgument, "invalid MFCC band/coefficient counts");
  if (!(config_.low_hz >= 0.0 && config_.low_hz < config_.high_hz &&
        config_.high_hz <= config_.sample_rate / 2.0))
    fail(ErrorCode::InvalidArgument, "MFCC frequency range must lie within [0, Nyquist]");

  const std::size_t bands = config_.num_bands;
  const double mel_lo = hz_to_mel(config_.low_hz);
  const double mel_hi = hz_to_mel(config_.high_hz);
  std::vector<double> edges(bands + 2);
  for (std::size_t i = 0; i < edges.size(); ++i)
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / static_cast<double>(bands + 1));

  const double bin_hz = config_.sample_rate / static_cast<double>(fft_size_);
  const std::size_t num_bins = fft_size_ / 2 + 1;
  filters_.resize(bands);
  for (std::size_t m = 0; m < bands; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    const double height = 2.0 / (right - left);  // unit area
    auto& filter = filters_[m];
    bool started = false;
    for (std::size_t k = 0; k < num_bins; ++k) {
      const double f = static_cast<double>(k) * bin_hz;
      double w = 0.0;
      if (f > left && f <= center) {
        w = (f - left) / (center - left);
      } else if (f > center && f < right) {
        w = (right - f) / (right - center);
      }
      if (w <= 0.0) {
        if (started) break;
        continue;
      }
      if (!started) {
        filter.first_bin = k;
        started = true;
      }
      filter.weights.push_back(w * height);
    }
  }

  // Orthonormal DCT-II.
  const std::size_t ncoef = config_.num_coefficients;
  dct_.resize(ncoef * bands);
  const double n = static_cast<double>(bands);
  for (std::size_t j = 0; j < ncoef; ++j) {
    const double scale = j == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (std::size_t m = 0; m < bands; ++m)
      dct_[j * bands + m] =
          scale * std::cos(std::numbers::pi * static_cast<double>(j) * (static_cast<double>(m) + 0.5) / n);
  }
}

std::vector<double> MfccExtractor::log_band_energies(std::span<const double> windowed) const {
  if (windowed.size() != config_.frame_length)
    fail(ErrorCode::LengthMismatch, "MFCC expects " + std::to_string(config_.frame_length) + " samples");
  const auto power = power_spectrum(windowed);
  std::vector<double> out(filters_.size());
  for (std::size_t m = 0; m < filters_.size(); ++m) {
    const auto& f = filters_[m];
    double e = 0.0;
    for (std::size_t i = 0; i < f.weights.size(); ++i) e += f.weights[i] * power[f.first_bin + i];
    out[m] = std::log(std::max(e, config_.log_floor));
  }
  return out;
}

std::vector<double> MfccExtractor::cepstrum(std::span<const double> log_energies) const {
  const std::size_t bands = config_.num_bands;
  if (log_energies.size() != bands) fail(ErrorCode::LengthMismatch, "expected one log energy per mel band");
  std::vector<double> c(config_.num_coefficients, 0.0);
  for (std::size_t j = 0; j < c.size(); ++j) {
    double acc = 0.0;
    for (std::size_t m = 0; m < bands; ++m) acc += dct_[j * bands + m] * log_energies[m];
    c[j] = acc;
  }
  return c;
}

std::vector<double> MfccExtractor::compute(std::span<const double> windowed) const {
  return cepstrum(log_band_energies(windowed));
}

std::vector<double> mfcc(std::span<const double> windowed) {
  static const MfccExtractor extractor;
  return extractor.compute(windowed);
}

}  // namespace nlconf::dsp
