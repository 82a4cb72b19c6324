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

#include "nlconf/corpus.hpp"
#include "nlconf/dsp/window.hpp"
#include "nlconf/error.hpp"

namespace nlconf::dsp {
namespace {

// 4-term Blackman-Harris, -92 dB side lobes.
constexpr double kBh0 = 0.35875;
constexpr double kBh1 = 0.48829;
constexpr double kBh2 = 0.14128;
constexpr double kBh3 = 0.01168;

double window_value(WindowKind kind, std::size_t n, std::size_t length) {
  if (length == 1) return 1.0;
  const double x = 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(length - 1);
  switch (kind) {
    case WindowKind::Hann:
      return 0.5 - 0.5 * std::cos(x);
    case WindowKind::BlackmanHarris4:
      return kBh0 - kBh1 * std::cos(x) + kBh2 * std::cos(2.0 * x) - kBh3 * std::cos(3.0 * x);
  }
  return 1.0;
}

}  // namespace

WindowFunction::WindowFunction(WindowKind kind, std::size_t length) : kind_(kind), coefficients_(length) {
  if (length == 0) fail(ErrorCode::InvalidArgument, "window length must be positive");
  for (std::size_t n = 0; n < (length + 1) / 2; ++n) {
    const double w = std::min(1.0, window_value(kind, n, length));
    coefficients_[n] = w;
    coefficients_[length - 1 - n] = w;
  }
}

const WindowFunction& frame_window(WindowKind kind) {
  static const WindowFunction hann(WindowKind::Hann, kFrameLength);
  static const WindowFunction bh(WindowKind::BlackmanHarris4, kFrameLength);
  return kind == WindowKind::Hann ? hann : bh;
}

std::vector<double> apply_window(std::span<const double> frame, const WindowFunction& window) {
  if (frame.size() != window.length())
    fail(ErrorCode::LengthMismatch, "frame has " + std::to_string(frame.size()) + " samples, window " +
                                        std::to_string(window.length()));
  const auto w = window.coefficients();
  std::vector<double> out(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) out[i] = frame[i] * w[i];
  return out;
}

}  // namespace nlconf::dsp
