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

#include <map>
#include <set>

#include "nlconf/error.hpp"
#include "nlconf/eval.hpp"

namespace nlconf::eval {

std::vector<PreparedFold> prepare_folds(std::span<const learn::SegmentFeatures> data,
                                        const featset::FeatureSetConfig& config,
                                        const learn::TrainingOptions& options) {
  std::map<std::string, std::size_t> confirmations;
  for (const auto& s : data) {
    auto& n = confirmations[s.speaker_id];
    if (s.label == Label::Confirmation) ++n;
  }
  std::vector<std::string> speakers;
  for (const auto& [id, n] : confirmations)
    if (n > 0) speakers.push_back(id);
  if (speakers.empty()) fail(ErrorCode::NoConfirmations, "no speaker has a confirmation segment");
  if (speakers.size() < 2)
    fail(ErrorCode::SplitImpossible, "leave-one-user-out needs at least two speakers with confirmations");
  const std::set<std::string> eligible(speakers.begin(), speakers.end());

  std::vector<PreparedFold> folds;
  folds.reserve(speakers.size());
  for (std::size_t k = 0; k < speakers.size(); ++k) {
    std::vector<const learn::SegmentFeatures*> train, test;
    for (const auto& s : data) {
      if (!eligible.contains(s.speaker_id)) continue;
      (s.speaker_id == speakers[k] ? test : train).push_back(&s);
    }
    const std::uint64_t fold_seed = options.seed ^ (0x9E3779B97F4A7C15ULL * (k + 1));
    const auto balanced = balance(learn::gather(train), fold_seed);
    const auto front = learn::fit_front_end(balanced.rows, config, options);
    const auto held_out = learn::gather(test);

    PreparedFold fold;
    fold.speaker_id = speakers[k];
    fold.confirmation_count = confirmations[speakers[k]];
    fold.train_rows = front.transform_rows(balanced.rows);
    fold.train_labels = balanced.labels;
    fold.test_rows = held_out.rows.rows() > 0 ? front.transform_rows(held_out.rows) : Eigen::MatrixXd();
    fold.test_labels = held_out.labels;
    folds.push_back(std::move(fold));
  }
  return folds;
}

CvFold evaluate_fold(const PreparedFold& fold, const learn::SvmHyperParams& params, const learn::SmoOptions& smo) {
  const auto model = learn::train_svm(fold.train_rows, fold.train_labels, params, smo);
  CvFold out;
  out.speaker_id = fold.speaker_id;
  out.confirmation_count = fold.confirmation_count;
  out.test_frames = fold.test_labels.size();
  if (out.test_frames == 0) return out;
  const Eigen::VectorXd f = model.decision_values(fold.test_rows);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < fold.test_labels.size(); ++i)
    correct += (f[static_cast<Eigen::Index>(i)] > 0.0) == (fold.test_labels[i] > 0) ? 1 : 0;
  out.accuracy = static_cast<double>(correct) / static_cast<double>(out.test_frames);
  return out;
}

CvReport louo_cv(std::span<const learn::SegmentFeatures> data, const featset::FeatureSetConfig& config,
                 const learn::TrainingOptions& options) {
  CvReport report;
  for (const auto& fold : prepare_folds(data, config, options))
    report.folds.push_back(evaluate_fold(fold, options.params, options.smo));
  report.weighted_accuracy = weighted_accuracy(report.folds);
  return report;
}

}  // namespace nlconf::eval
