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

// Independent reference implementations used only by the tests. Each one is
// written the slow, obvious way and shares no code with the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

inline std::vector<double> blackman_harris(std::size_t n) {
  std::vector<double> w(n);
  const double m = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i);
    w[i] = 0.35875 - 0.48829 * std::cos(2 * kPi * x / m) + 0.14128 * std::cos(4 * kPi * x / m) -
           0.01168 * std::cos(6 * kPi * x / m);
  }
  return w;
}

inline std::vector<double> hann(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2 * kPi * static_cast<double>(i) / (n - 1.0));
  return w;
}

/// |X_k|^2, k = 0..nfft/2, by the direct DFT sum over the zero-padded input.
inline std::vector<double> direct_power_spectrum(std::span<const double> x, std::size_t nfft) {
  std::vector<double> p(nfft / 2 + 1);
  for (std::size_t k = 0; k < p.size(); ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n)
      acc += x[n] * std::polar(1.0, -2 * kPi * static_cast<double>(k * n % nfft) / static_cast<double>(nfft));
    p[k] = std::norm(acc);
  }
  return p;
}

inline double mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
inline double inv_mel(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

/// Straight-line MFCC of a raw 400-sample frame: Blackman-Harris window,
/// 512-point direct DFT, 40 unit-area triangles on 20..7800 Hz, log with a
/// 1e-10 floor, orthonormal DCT-II, 13 coefficients.
inline std::vector<double> reference_mfcc(std::span<const double> raw) {
  const std::size_t nfft = 512, bands = 40, ncoef = 13;
  const double fs = 16000.0;
  const auto w = blackman_harris(raw.size());
  std::vector<double> x(raw.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = raw[i] * w[i];
  const auto power = direct_power_spectrum(x, nfft);

  std::vector<double> log_e(bands);
  const double lo = mel(20.0), hi = mel(7800.0);
  for (std::size_t m = 0; m < bands; ++m) {
    const double a = inv_mel(lo + (hi - lo) * m / (bands + 1.0));
    const double b = inv_mel(lo + (hi - lo) * (m + 1.0) / (bands + 1.0));
    const double c = inv_mel(lo + (hi - lo) * (m + 2.0) / (bands + 1.0));
    double e = 0.0;
    for (std::size_t k = 0; k < power.size(); ++k) {
      const double f = k * fs / nfft;
      double tri = 0.0;
      if (f > a && f <= b) tri = (f - a) / (b - a);
      if (f > b && f < c) tri = (c - f) / (c - b);
      e += tri * (2.0 / (c - a)) * power[k];
    }
    log_e[m] = std::log(std::max(e, 1e-10));
  }
  std::vector<double> out(ncoef);
  for (std::size_t j = 0; j < ncoef; ++j) {
    double acc = 0.0;
    for (std::size_t m = 0; m < bands; ++m) acc += log_e[m] * std::cos(kPi * j * (m + 0.5) / bands);
    out[j] = acc * (j == 0 ? std::sqrt(1.0 / bands) : std::sqrt(2.0 / bands));
  }
  return out;
}

/// Fraction of (positive, negative) pairs ordered correctly, ties count 1/2.
inline double pairwise_auc(std::span<const double> scores, std::span<const int> labels) {
  double num = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] <= 0) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] > 0) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) num += 1.0;
      else if (scores[i] == scores[j]) num += 0.5;
    }
  }
  return num / pairs;
}

/// Largest violation of the C-SVC optimality conditions in terms of the
/// functional margin y_i f(x_i): >= 1 at alpha = 0, <= 1 at alpha = C,
/// == 1 in between.
inline double kkt_violation(const Eigen::MatrixXd& rows, std::span<const int> y, const Eigen::VectorXd& alpha,
                            double bias, double C, double gamma) {
  const Eigen::Index n = rows.rows();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double f = bias;
    for (Eigen::Index j = 0; j < n; ++j)
      f += alpha[j] * y[static_cast<std::size_t>(j)] * std::exp(-gamma * (rows.row(i) - rows.row(j)).squaredNorm());
    const double g = y[static_cast<std::size_t>(i)] * f - 1.0;
    double v = 0.0;
    if (alpha[i] <= 0.0) v = std::max(0.0, -g);
    else if (alpha[i] >= C) v = std::max(0.0, g);
    else v = std::abs(g);
    worst = std::max(worst, v);
  }
  return worst;
}

/// Pulse train at f0 through two second-order resonators (pole radius r).
inline std::vector<double> two_resonator_signal(double f1, double f2, double f0, std::size_t n, double r = 0.97,
                                                double fs = 16000.0, double phase = 0.0) {
  std::vector<double> x(n, 0.0);
  double next = phase * fs / f0;
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<double>(i) >= next) {
      x[i] = 1.0;
      next += fs / f0;
    }
  }
  for (double f : {f1, f2}) {
    const double a1 = 2 * r * std::cos(2 * kPi * f / fs), a2 = -r * r;
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      y[i] = x[i] + (i >= 1 ? a1 * y[i - 1] : 0.0) + (i >= 2 ? a2 * y[i - 2] : 0.0);
    x = y;
  }
  return x;
}

inline std::vector<double> ar2_signal(double c1, double c2, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> e(0.0, 1.0);
  std::vector<double> x(n + 500, 0.0);
  for (std::size_t i = 2; i < x.size(); ++i) x[i] = c1 * x[i - 1] + c2 * x[i - 2] + e(rng);
  return {x.begin() + 500, x.end()};
}

inline std::vector<double> sine(double hz, std::size_t n, double amplitude = 0.5, double fs = 16000.0,
                                double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = amplitude * std::sin(2 * kPi * hz * i / fs + phase);
  return x;
}

/// Monic polynomial (highest power first) with the given roots; the roots
/// must come in conjugate pairs for the result to be real.
inline std::vector<double> poly_from_roots(std::span<const std::complex<double>> roots) {
  std::vector<std::complex<double>> p{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> q(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i] += p[i];
      q[i + 1] -= r * p[i];
    }
    p = q;
  }
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i].real();
  return out;
}

/// Largest distance under the pairing that minimizes the summed distance
/// (exhaustive dynamic programme over subsets; fine for <= 14 roots).
inline double matched_root_error(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b) {
  const std::size_t n = a.size();
  if (b.size() != n) return std::numeric_limits<double>::infinity();
  const std::size_t full = std::size_t{1} << n;
  std::vector<double> cost(full, std::numeric_limits<double>::infinity());
  std::vector<double> worst(full, 0.0);
  cost[0] = 0.0;
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (!std::isfinite(cost[mask])) continue;
    const auto i = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (i == n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      const double d = std::abs(a[i] - b[j]);
      const std::size_t next = mask | (std::size_t{1} << j);
      if (cost[mask] + d < cost[next]) {
        cost[next] = cost[mask] + d;
        worst[next] = std::max(worst[mask], d);
      }
    }
  }
  return worst[full - 1];
}

}  // namespace oracle
