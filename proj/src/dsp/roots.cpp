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

#include <cmath>

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

#include "nlconf/dsp/roots.hpp"
#include "nlconf/error.hpp"

namespace nlconf::dsp {
namespace {

constexpr int kPolishSteps = 8;
constexpr double kResidualTolerance = 1e-6;

// p(z) and p'(z) by Horner's rule, highest power first.
void evaluate_with_derivative(std::span<const double> p, std::complex<double> z, std::complex<double>& value,
                              std::complex<double>& derivative) {
  value = p[0];
  derivative = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    derivative = derivative * z + value;
    value = value * z + p[i];
  }
}

double absolute_scale(std::span<const double> p, double radius) {
  double s = 0.0;
  for (double c : p) s = s * radius + std::abs(c);
  return s;
}

}  // namespace

std::complex<double> evaluate_polynomial(std::span<const double> p, std::complex<double> z) {
  std::complex<double> v = 0.0;
  for (double c : p) v = v * z + c;
  return v;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coefficients) {
  if (coefficients.size() < 2) fail(ErrorCode::InvalidArgument, "polynomial degree must be at least 1");
  if (coefficients[0] == 0.0) fail(ErrorCode::InvalidArgument, "leading coefficient must be nonzero");
  for (double c : coefficients)
    if (!std::isfinite(c)) fail(ErrorCode::NumericalFailure, "non-finite polynomial coefficient");

  const auto degree = static_cast<Eigen::Index>(coefficients.size() - 1);
  std::vector<std::complex<double>> roots;
  if (degree == 1) {
    roots.emplace_back(-coefficients[1] / coefficients[0], 0.0);
  } else {
    // Eigen expects ascending powers.
    Eigen::VectorXd ascending(degree + 1);
    for (Eigen::Index i = 0; i <= degree; ++i) ascending[i] = coefficients[static_cast<std::size_t>(degree - i)];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(ascending);
    const auto& found = solver.roots();
    roots.assign(found.data(), found.data() + found.size());
  }

  for (auto& r : roots) {
    std::complex<double> value, derivative;
    evaluate_with_derivative(coefficients, r, value, derivative);
    for (int step = 0; step < kPolishSteps && std::abs(value) > 0.0; ++step) {
      if (std::abs(derivative) == 0.0) break;
      const std::complex<double> candidate = r - value / derivative;
      std::complex<double> cv, cd;
      evaluate_with_derivative(coefficients, candidate, cv, cd);
      if (!(std::abs(cv) < std::abs(value))) break;
      r = candidate;
      value = cv;
      derivative = cd;
    }
    const double scale = absolute_scale(coefficients, std::abs(r));
    if (!std::isfinite(std::abs(value)) || std::abs(value) >= kResidualTolerance * scale)
      fail(ErrorCode::NumericalFailure, "root residual tolerance not met");
  }
  return roots;
}

std::vector<std::complex<double>> fix_roots(std::span<const std::complex<double>> roots) {
  std::vector<std::complex<double>> out(roots.begin(), roots.end());
  for (auto& r : out)
    if (std::abs(r) > 1.0) r = 1.0 / std::conj(r);
  return out;
}

}  // namespace nlconf::dsp
