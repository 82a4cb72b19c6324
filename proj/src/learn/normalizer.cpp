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

#include "nlconf/error.hpp"
#include "nlconf/learn/normalizer.hpp"

namespace nlconf::learn {

Eigen::VectorXd NormalizerStats::apply(const Eigen::VectorXd& x) const {
  if (x.size() != mean.size()) fail(ErrorCode::DimensionMismatch, "normalizer input width");
  return ((x - mean).array() / std.array()).matrix();
}

Eigen::MatrixXd NormalizerStats::apply_rows(const Eigen::MatrixXd& rows) const {
  if (rows.cols() != mean.size()) fail(ErrorCode::DimensionMismatch, "normalizer input width");
  return ((rows.rowwise() - mean.transpose()).array().rowwise() / std.transpose().array()).matrix();
}

NormalizerStats NormalizerStats::identity(Eigen::Index dimension) {
  return {Eigen::VectorXd::Zero(dimension), Eigen::VectorXd::Ones(dimension)};
}

NormalizerStats fit_normalizer(const Eigen::MatrixXd& rows) {
  if (rows.rows() < 2) fail(ErrorCode::TooFewSamples, "normalizer needs at least two rows");
  NormalizerStats stats;
  const auto n = static_cast<double>(rows.rows());
  stats.mean = rows.colwise().mean().transpose();
  stats.std.resize(rows.cols());
  for (Eigen::Index j = 0; j < rows.cols(); ++j) {
    const double var = (rows.col(j).array() - stats.mean[j]).square().sum() / n;
    const double sd = std::sqrt(var);
    stats.std[j] = (sd > 0.0 && std::isfinite(sd)) ? sd : 1.0;
  }
  return stats;
}

}  // namespace nlconf::learn
