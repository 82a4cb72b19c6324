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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nlconf/featset.hpp"
#include "nlconf/learn/normalizer.hpp"
#include "nlconf/learn/pca.hpp"
#include "nlconf/learn/svm.hpp"

namespace nlconf::learn {

inline constexpr std::uint32_t kModelFormatVersion = 1;

/// Everything needed to classify raw feature vectors of one feature set:
/// raw -> normalizer -> optional PCA -> SVM.
struct ModelBundle {
  std::uint32_t format_version = kModelFormatVersion;
  featset::FeatureSetConfig feature_config;
  NormalizerStats normalizer;
  std::optional<PcaTransform> pca;
  SvmHyperParams params;
  SvmModel svm;

  Eigen::VectorXd transform(std::span<const double> raw) const;
  Eigen::MatrixXd transform_rows(const Eigen::MatrixXd& raw_rows) const;
  double decision_value(std::span<const double> raw) const;
  Eigen::Index model_dimension() const { return svm.dimension(); }

  /// Throws CorruptModel when the dimension chain or PCA presence rule is
  /// violated.
  void validate() const;
};

std::vector<std::uint8_t> encode_model(const ModelBundle& bundle);
ModelBundle decode_model(std::span<const std::uint8_t> bytes);

void save_model(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load_model(const std::filesystem::path& path);

/// JSON mirror of the binary model (debug export).
std::string model_to_json(const ModelBundle& bundle);

}  // namespace nlconf::learn
