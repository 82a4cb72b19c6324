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

#include <Eigen/Core>

namespace nlconf::learn {

inline constexpr double kDefaultPcaEpsilon = 0.95;

struct PcaTransform {
  double epsilon = kDefaultPcaEpsilon;
  Eigen::VectorXd mean;         // d
  Eigen::MatrixXd basis;        // k x d, orthonormal rows
  Eigen::VectorXd eigenvalues;  // k, non-increasing
  double total_variance = 0.0;

  Eigen::Index input_dimension() const { return basis.cols(); }
  Eigen::Index output_dimension() const { return basis.rows(); }
  double retained_ratio() const;

  Eigen::VectorXd project(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd project_rows(const Eigen::MatrixXd& rows) const;
  Eigen::VectorXd back_project(const Eigen::VectorXd& y) const;
};

/// Smallest k whose leading eigenvalues (sorted non-increasing) reach the
/// fraction `epsilon` of the total.
Eigen::Index components_for(const Eigen::VectorXd& sorted_eigenvalues, double epsilon);

/// Eigendecomposition of the sample covariance of `rows` (samples as rows).
PcaTransform fit_pca(const Eigen::MatrixXd& rows, double epsilon = kDefaultPcaEpsilon);

}  // namespace nlconf::learn
