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

#include <tuple>

#include "nlconf/error.hpp"
#include "nlconf/eval.hpp"
#include "nlconf/learn/grid_search.hpp"

namespace nlconf::learn {

std::vector<SvmHyperParams> HyperGrid::points() const {
  std::vector<SvmHyperParams> out;
  out.reserve(C.size() * eps.size() * gamma.size());
  for (double c : C)
    for (double e : eps)
      for (double g : gamma) out.push_back({c, e, g});
  return out;
}

bool params_less(const SvmHyperParams& a, const SvmHyperParams& b) {
  return std::tie(a.C, a.eps, a.gamma) < std::tie(b.C, b.eps, b.gamma);
}

std::size_t select_best(std::span<const GridPoint> points) {
  if (points.empty()) fail(ErrorCode::InvalidArgument, "empty grid");
  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const auto& p = points[i];
    const auto& b = points[best];
    if (p.score > b.score || (p.score == b.score && params_less(p.params, b.params))) best = i;
  }
  return best;
}

GridSearchResult grid_search(std::span<const SegmentFeatures> train, const featset::FeatureSetConfig& config,
                             const HyperGrid& grid, const TrainingOptions& options) {
  const auto candidates = grid.points();
  if (candidates.empty()) fail(ErrorCode::ConfigError, "hyperparameter grid is empty");
  // Normalizer, PCA and balancing do not depend on the SVM parameters, so
  // every grid point shares the same prepared folds.
  const auto folds = eval::prepare_folds(train, config, options);

  GridSearchResult result;
  for (const auto& params : candidates) {
    std::vector<eval::CvFold> scored;
    scored.reserve(folds.size());
    for (const auto& fold : folds) scored.push_back(eval::evaluate_fold(fold, params, options.smo));
    eval::CvReport report{scored, eval::weighted_accuracy(scored)};
    result.points.push_back({params, report.weighted_accuracy, report.min_accuracy(), report.max_accuracy()});
  }
  const std::size_t best = select_best(result.points);
  result.best = result.points[best].params;
  result.best_score = result.points[best].score;
  return result;
}

}  // namespace nlconf::learn
