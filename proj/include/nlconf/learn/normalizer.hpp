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

/// Per-dimension z-score statistics. Dimensions with zero variance keep
/// std = 1 so they map to 0.
struct NormalizerStats {
  Eigen::VectorXd mean;
  Eigen::VectorXd std;

  Eigen::Index dimension() const { return mean.size(); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  /// Rows are samples.
  Eigen::MatrixXd apply_rows(const Eigen::MatrixXd& rows) const;

  static NormalizerStats identity(Eigen::Index dimension);
};

/// Mean and population standard deviation of each column. Needs >= 2 rows.
NormalizerStats fit_normalizer(const Eigen::MatrixXd& rows);

}  // namespace nlconf::learn
