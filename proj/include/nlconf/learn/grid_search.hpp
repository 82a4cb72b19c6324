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
#include <span>
#include <vector>

#include "nlconf/learn/dataset.hpp"
#include "nlconf/learn/svm.hpp"

namespace nlconf::learn {

struct HyperGrid {
  std::vector<double> C = {1.0, 5.0};
  std::vector<double> eps = {0.005, 0.05, 0.1, 0.5};
  std::vector<double> gamma = {0.005, 0.05};

  std::vector<SvmHyperParams> points() const;
};

struct GridPoint {
  SvmHyperParams params;
  double score = 0.0;  // confirmation-weighted leave-one-user-out accuracy
  double min_fold_accuracy = 0.0;
  double max_fold_accuracy = 0.0;
};

struct GridSearchResult {
  std::vector<GridPoint> points;
  SvmHyperParams best;
  double best_score = 0.0;
};

/// Lexicographic (C, eps, gamma) ordering used to break score ties.
bool params_less(const SvmHyperParams& a, const SvmHyperParams& b);

/// Picks the highest score; ties go to the lexicographically smaller triple.
std::size_t select_best(std::span<const GridPoint> points);

/// Scores every grid point by leave-one-user-out cross-validation.
GridSearchResult grid_search(std::span<const SegmentFeatures> train, const featset::FeatureSetConfig& config,
                             const HyperGrid& grid, const TrainingOptions& options);

}  // namespace nlconf::learn
