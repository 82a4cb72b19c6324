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
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nlconf/corpus.hpp"
#include "nlconf/learn/dataset.hpp"
#include "nlconf/pipeline.hpp"

namespace nlconf::eval {

struct ConfusionCounts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  double tpr() const;       // 0 when there are no positives
  double fpr() const;       // 0 when there are no negatives
  double accuracy() const;  // 0 when empty

  void add(bool predicted_positive, bool truly_positive);
};

/// Counts at threshold 0 (score > 0 is positive); labels are +1 / -1.
ConfusionCounts confusion_at_zero(std::span<const double> scores, std::span<const int> labels);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;  // scores >= threshold count as positive (+inf for the origin)
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

/// ROC over all distinct score values, swept from +inf down. Equal scores
/// move together, so ties contribute a diagonal step. Labels are +1 / -1.
RocCurve roc_auc(std::span<const double> scores, std::span<const int> labels);

/// Indices of a class-balanced subset: every positive plus an equally sized
/// seeded uniform sample of the negatives (or the reverse when negatives are
/// the minority). Returned in ascending order.
std::vector<std::size_t> balance_frames(std::span<const int> labels, std::uint64_t seed);
learn::LabeledRows balance(const learn::LabeledRows& data, std::uint64_t seed);

struct CvFold {
  std::string speaker_id;
  double accuracy = 0.0;
  std::size_t confirmation_count = 0;  // confirmation segments of the held-out speaker
  std::size_t test_frames = 0;
};

struct CvReport {
  std::vector<CvFold> folds;
  double weighted_accuracy = 0.0;

  double min_accuracy() const;
  double max_accuracy() const;
};

/// sum(acc_i * w_i) / sum(w_i) with w_i the fold confirmation counts.
double weighted_accuracy(std::span<const CvFold> folds);

/// One leave-one-user-out fold with its SVM-independent preprocessing done:
/// the balanced training rows and the held-out rows are already normalized
/// and projected by the fold's own front end.
struct PreparedFold {
  std::string speaker_id;
  std::size_t confirmation_count = 0;
  Eigen::MatrixXd train_rows;
  std::vector<int> train_labels;
  Eigen::MatrixXd test_rows;
  std::vector<int> test_labels;
};

/// Drops speakers without confirmation segments and builds one fold per
/// remaining speaker. Needs at least two such speakers.
std::vector<PreparedFold> prepare_folds(std::span<const learn::SegmentFeatures> data,
                                        const featset::FeatureSetConfig& config,
                                        const learn::TrainingOptions& options);

CvFold evaluate_fold(const PreparedFold& fold, const learn::SvmHyperParams& params, const learn::SmoOptions& smo);

CvReport louo_cv(std::span<const learn::SegmentFeatures> data, const featset::FeatureSetConfig& config,
                 const learn::TrainingOptions& options);

struct SegmentMetrics {
  ConfusionCounts counts;
  double accuracy = 0.0;
};

SegmentMetrics segment_metrics(std::span<const Label> decided, std::span<const Label> truth);
SegmentMetrics segment_metrics(std::span<const pipeline::SegmentDecision> decisions, std::span<const Label> truth);

struct EvalOptions {
  pipeline::VoteConfig vote;
  bool segment_roc = false;  // also score segments by their max rolling mean
};

struct EvalReport {
  featset::FeatureKind kind = featset::FeatureKind::StackedFormants;
  std::size_t raw_dimension = 0;
  std::size_t model_dimension = 0;
  learn::SvmHyperParams params;
  std::optional<CvReport> cv;
  RocCurve frame_roc;
  ConfusionCounts frame_counts;
  SegmentMetrics segments;
  std::optional<RocCurve> segment_roc;
  std::size_t skipped_segments = 0;  // too short for the feature context
};

/// Scores the test segments with the bundle (offline mode) and collects the
/// frame-level ROC, threshold-0 frame counts and vote-based segment metrics.
EvalReport evaluate_model(const learn::ModelBundle& bundle, std::span<const corpus::AudioSegment> test,
                          const EvalOptions& options = {});

std::string report_to_json(const EvalReport& report);
void write_roc_csv(std::ostream& out, const RocCurve& curve);

/// Results table: feature set, dimension, CV range, TPR, FPR, AUC.
std::string format_table(std::span<const EvalReport> reports);

}  // namespace nlconf::eval
