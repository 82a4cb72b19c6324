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
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace nlconf::learn {

struct SvmHyperParams {
  double C = 1.0;
  double eps = 0.5;    // SMO stopping tolerance on the maximal KKT violation
  double gamma = 0.05; // RBF width

  bool operator==(const SvmHyperParams&) const = default;
};

/// exp(-gamma * ||x - z||^2)
double rbf_kernel(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& z,
                  double gamma);

struct SvmModel {
  Eigen::MatrixXd support_vectors;  // one per row
  Eigen::VectorXd coefficients;     // alpha_i * y_i
  double bias = 0.0;
  double gamma = 0.0;

  Eigen::Index dimension() const { return support_vectors.cols(); }
  /// f(x) = sum_i coefficients_i * K(sv_i, x) + bias; positive means
  /// Confirmation.
  double decision_value(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd decision_values(const Eigen::MatrixXd& rows) const;
};

struct SmoOptions {
  std::uint64_t max_iterations = 10'000'000;
  std::size_t cache_bytes = std::size_t{256} << 20;
};

struct SmoResult {
  Eigen::VectorXd alpha;  // one per training row, in [0, C]
  double bias = 0.0;
  double gap = 0.0;       // final max violation m(alpha) - M(alpha)
  std::uint64_t iterations = 0;
};

/// Soft-margin C-SVC dual solved by SMO with maximal-violating-pair working
/// set selection. Labels are +1 / -1. Throws SingleClass if only one label
/// is present, ConvergenceFailure at the iteration cap.
SmoResult solve_smo(const Eigen::MatrixXd& rows, std::span<const int> labels, const SvmHyperParams& params,
                    const SmoOptions& options = {});

SvmModel train_svm(const Eigen::MatrixXd& rows, std::span<const int> labels, const SvmHyperParams& params,
                   const SmoOptions& options = {});

}  // namespace nlconf::learn
