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
#include <limits>
#include <list>
#include <unordered_map>

#include "nlconf/error.hpp"
#include "nlconf/learn/svm.hpp"

namespace nlconf::learn {
namespace {

constexpr double kTau = 1e-12;

// LRU cache of kernel rows K(i, .).
class KernelCache {
 public:
  KernelCache(const Eigen::MatrixXd& rows, double gamma, std::size_t bytes)
      : rows_(rows), gamma_(gamma) {
    const auto row_bytes = static_cast<std::size_t>(rows.rows()) * sizeof(double);
    capacity_ = std::max<std::size_t>(2, bytes / std::max<std::size_t>(row_bytes, 1));
  }

  const Eigen::VectorXd& row(Eigen::Index i) {
    auto it = index_.find(i);
    if (it != index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->second;
    }
    if (lru_.size() >= capacity_) {
      index_.erase(lru_.back().first);
      lru_.pop_back();
    }
    Eigen::VectorXd k = (-gamma_ * (rows_.rowwise() - rows_.row(i)).rowwise().squaredNorm()).array().exp();
    k[i] = 1.0;
    lru_.emplace_front(i, std::move(k));
    index_[i] = lru_.begin();
    return lru_.front().second;
  }

 private:
  using Entry = std::pair<Eigen::Index, Eigen::VectorXd>;
  const Eigen::MatrixXd& rows_;
  double gamma_;
  std::size_t capacity_;
  std::list<Entry> lru_;
  std::unordered_map<Eigen::Index, std::list<Entry>::iterator> index_;
};

void check_params(const SvmHyperParams& p) {
  if (!(p.C > 0.0 && p.eps > 0.0 && p.gamma > 0.0))
    fail(ErrorCode::InvalidArgument, "SVM hyperparameters C, eps and gamma must be positive");
}

}  // namespace

double rbf_kernel(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& z,
                  double gamma) {
  if (x.size() != z.size()) fail(ErrorCode::DimensionMismatch, "kernel arguments differ in width");
  return std::exp(-gamma * (x - z).squaredNorm());
}

double SvmModel::decision_value(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != support_vectors.cols())
    fail(ErrorCode::DimensionMismatch, "expected " + std::to_string(support_vectors.cols()) + " features, got " +
                                           std::to_string(x.size()));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < support_vectors.rows(); ++i)
    sum += coefficients[i] * std::exp(-gamma * (support_vectors.row(i).transpose() - x).squaredNorm());
  return sum + bias;
}

Eigen::VectorXd SvmModel::decision_values(const Eigen::MatrixXd& rows) const {
  if (rows.cols() != support_vectors.cols()) fail(ErrorCode::DimensionMismatch, "decision input width");
  const Eigen::VectorXd xn = rows.rowwise().squaredNorm();
  const Eigen::VectorXd sn = support_vectors.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = -2.0 * rows * support_vectors.transpose();
  d2.colwise() += xn;
  d2.rowwise() += sn.transpose();
  const Eigen::MatrixXd k = (-gamma * d2.array().max(0.0)).exp().matrix();
  return (k * coefficients).array() + bias;
}

SmoResult solve_smo(const Eigen::MatrixXd& rows, std::span<const int> labels, const SvmHyperParams& params,
                    const SmoOptions& options) {
  check_params(params);
  const Eigen::Index n = rows.rows();
  if (static_cast<std::size_t>(n) != labels.size()) fail(ErrorCode::LengthMismatch, "one label per row required");
  bool has_pos = false, has_neg = false;
  for (int y : labels) {
    if (y == 1) has_pos = true;
    else if (y == -1) has_neg = true;
    else fail(ErrorCode::InvalidArgument, "labels must be +1 or -1");
  }
  if (!has_pos || !has_neg) fail(ErrorCode::SingleClass, "training data contains a single class");

  const double C = params.C;
  std::vector<double> y(labels.begin(), labels.end());
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);  // Q alpha - e
  KernelCache cache(rows, params.gamma, options.cache_bytes);

  auto in_up = [&](Eigen::Index t) { return y[t] > 0 ? alpha[t] < C : alpha[t] > 0.0; };
  auto in_low = [&](Eigen::Index t) { return y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < C; };

  SmoResult result;
  std::uint64_t iter = 0;
  while (true) {
    Eigen::Index i = -1, j = -1;
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (in_up(t) && v > gmax) {
        gmax = v;
        i = t;
      }
      if (in_low(t) && v < gmin) {
        gmin = v;
        j = t;
      }
    }
    result.gap = gmax - gmin;
    if (i < 0 || j < 0 || result.gap <= params.eps) break;
    if (iter >= options.max_iterations)
      fail(ErrorCode::ConvergenceFailure, "SMO reached " + std::to_string(iter) + " iterations");
    ++iter;

    const Eigen::VectorXd& ki = cache.row(i);
    const Eigen::VectorXd& kj = cache.row(j);
    const double kij = ki[j];
    const double old_i = alpha[i], old_j = alpha[j];
    double quad = 2.0 - 2.0 * kij;  // K_ii + K_jj - 2 K_ij
    if (quad <= 0.0) quad = kTau;

    if (y[i] != y[j]) {
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    // Gradient update in ascending index order so the arithmetic does not
    // depend on which member of the pair was selected first.
    const double di = alpha[i] - old_i, dj = alpha[j] - old_j;
    const bool i_first = i < j;
    const Eigen::VectorXd& ka = i_first ? ki : kj;
    const Eigen::VectorXd& kb = i_first ? kj : ki;
    const double ya = i_first ? y[i] * di : y[j] * dj;
    const double yb = i_first ? y[j] * dj : y[i] * di;
    for (Eigen::Index t = 0; t < n; ++t) {
      grad[t] += y[t] * ka[t] * ya;
      grad[t] += y[t] * kb[t] * yb;
    }
  }

  // Offset from free vectors, else midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity(), lb = -ub, free_sum = 0.0;
  std::size_t free_count = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= C) {
      if (y[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0.0) {
      if (y[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2.0;

  result.alpha = std::move(alpha);
  result.bias = -rho;
  result.iterations = iter;
  return result;
}

SvmModel train_svm(const Eigen::MatrixXd& rows, std::span<const int> labels, const SvmHyperParams& params,
                   const SmoOptions& options) {
  const SmoResult solved = solve_smo(rows, labels, params, options);
  std::vector<Eigen::Index> sv;
  for (Eigen::Index t = 0; t < rows.rows(); ++t)
    if (solved.alpha[t] > 0.0) sv.push_back(t);

  SvmModel model;
  model.gamma = params.gamma;
  model.bias = solved.bias;
  model.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), rows.cols());
  model.coefficients.resize(static_cast<Eigen::Index>(sv.size()));
  for (std::size_t k = 0; k < sv.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    model.support_vectors.row(kk) = rows.row(sv[k]);
    model.coefficients[kk] = solved.alpha[sv[k]] * labels[static_cast<std::size_t>(sv[k])];
  }
  return model;
}

}  // namespace nlconf::learn
