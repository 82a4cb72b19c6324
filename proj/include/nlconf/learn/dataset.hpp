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
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nlconf/corpus.hpp"
#include "nlconf/featset.hpp"
#include "nlconf/learn/model.hpp"

namespace nlconf::learn {

/// Extracted feature rows of one segment.
struct SegmentFeatures {
  std::string segment_id;
  std::string speaker_id;
  Label label = Label::Other;
  std::vector<std::size_t> frame_indices;
  Eigen::MatrixXd rows;  // one feature vector per row
};

Eigen::MatrixXd to_matrix(std::span<const featset::FeatureVector> vectors, std::size_t dimension);

/// Extracts features for every segment. Segments too short for the feature
/// set's context are skipped.
std::vector<SegmentFeatures> featurize(std::span<const corpus::AudioSegment> segments,
                                       const featset::FeatureSetConfig& config);

/// All frame rows of the given segments stacked, with +1 / -1 labels.
struct LabeledRows {
  Eigen::MatrixXd rows;
  std::vector<int> labels;
};

LabeledRows gather(std::span<const SegmentFeatures> segments);
LabeledRows gather(std::span<const SegmentFeatures* const> segments);

struct TrainingOptions {
  SvmHyperParams params;
  double pca_epsilon = kDefaultPcaEpsilon;
  bool normalize = true;
  std::uint64_t seed = 0;
  SmoOptions smo;
};

/// Per-feature-set hyperparameter defaults (grid-search winners).
SvmHyperParams default_hyperparams(featset::FeatureKind kind);

/// Fits normalizer, PCA (for kinds that use it) and the SVM on already
/// balanced rows.
ModelBundle train_bundle(const LabeledRows& data, const featset::FeatureSetConfig& config,
                         const TrainingOptions& options);

/// Normalizer + optional PCA fitted to rows; the SVM is left empty.
ModelBundle fit_front_end(const Eigen::MatrixXd& rows, const featset::FeatureSetConfig& config,
                          const TrainingOptions& options);

}  // namespace nlconf::learn
