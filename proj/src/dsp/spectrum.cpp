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

#include <complex>

#include <unsupported/Eigen/FFT>

#include "nlconf/dsp/spectrum.hpp"
#include "nlconf/error.hpp"

namespace nlconf::dsp {
namespace {

// Eigen::FFT caches twiddle tables internally and is not safe to share.
Eigen::FFT<double>& local_fft() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> power_spectrum(std::span<const double> windowed) {
  if (windowed.empty()) fail(ErrorCode::InvalidArgument, "power_spectrum of empty input");
  const std::size_t nfft = next_pow2(windowed.size());
  std::vector<double> padded(nfft, 0.0);
  std::copy(windowed.begin(), windowed.end(), padded.begin());
  std::vector<std::complex<double>> spectrum;
  local_fft().fwd(spectrum, padded);

  std::vector<double> power(nfft / 2 + 1);
  for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(spectrum[k]);
  return power;
}

std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag) {
  if (x.empty()) fail(ErrorCode::InvalidArgument, "autocorrelation of empty input");
  const std::size_t nfft = next_pow2(2 * x.size());
  std::vector<double> padded(nfft, 0.0);
  std::copy(x.begin(), x.end(), padded.begin());
  auto& fft = local_fft();
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, padded);
  for (auto& c : spectrum) c = std::norm(c);
  std::vector<double> acf;
  fft.inv(acf, spectrum);

  const std::size_t lags = std::min(max_lag, x.size() - 1) + 1;
  acf.resize(lags);
  return acf;
}

}  // namespace nlconf::dsp
