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

#include <Eigen/Eigenvalues>

#include "nlconf/error.hpp"
#include "nlconf/learn/pca.hpp"

namespace nlconf::learn {

double PcaTransform::retained_ratio() const {
  return total_variance > 0.0 ? eigenvalues.sum() / total_variance : 0.0;
}

Eigen::VectorXd PcaTransform::project(const Eigen::VectorXd& x) const {
  if (x.size() != basis.cols()) fail(ErrorCode::DimensionMismatch, "PCA input width");
  return basis * (x - mean);
}

Eigen::MatrixXd PcaTransform::project_rows(const Eigen::MatrixXd& rows) const {
  if (rows.cols() != basis.cols()) fail(ErrorCode::DimensionMismatch, "PCA input width");
  return (rows.rowwise() - mean.transpose()) * basis.transpose();
}

Eigen::VectorXd PcaTransform::back_project(const Eigen::VectorXd& y) const {
  if (y.size() != basis.rows()) fail(ErrorCode::DimensionMismatch, "PCA output width");
  return basis.transpose() * y + mean;
}

Eigen::Index components_for(const Eigen::VectorXd& sorted_eigenvalues, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) fail(ErrorCode::InvalidArgument, "PCA epsilon must lie in (0, 1]");
  const double total = sorted_eigenvalues.sum();
  if (!(total > 0.0)) fail(ErrorCode::DegenerateCovariance, "total variance is zero");
  double cumulative = 0.0;
  for (Eigen::Index k = 0; k < sorted_eigenvalues.size(); ++k) {
    cumulative += sorted_eigenvalues[k];
    if (cumulative / total >= epsilon - 1e-12) return k + 1;
  }
  return sorted_eigenvalues.size();
}

PcaTransform fit_pca(const Eigen::MatrixXd& rows, double epsilon) {
  if (rows.rows() < 2) fail(ErrorCode::TooFewSamples, "PCA needs at least two rows");
  PcaTransform pca;
  pca.epsilon = epsilon;
  pca.mean = rows.colwise().mean().transpose();
  const Eigen::MatrixXd centered = rows.rowwise() - pca.mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(rows.rows() - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "covariance eigendecomposition failed");

  // Eigen returns ascending eigenvalues.
  const Eigen::Index d = cov.rows();
  Eigen::VectorXd values(d);
  Eigen::MatrixXd vectors(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    values[i] = std::max(0.0, solver.eigenvalues()[d - 1 - i]);
    Eigen::VectorXd v = solver.eigenvectors().col(d - 1 - i);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0.0) v = -v;
    vectors.row(i) = v.transpose();
  }
  pca.total_variance = values.sum();
  if (!(pca.total_variance > 0.0)) fail(ErrorCode::DegenerateCovariance, "all dimensions have zero variance");

  const Eigen::Index k = components_for(values, epsilon);
  pca.eigenvalues = values.head(k);
  pca.basis = vectors.topRows(k);
  return pca;
}

}  // namespace nlconf::learn
