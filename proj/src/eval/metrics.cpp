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
#include <numeric>
#include <random>

#include "nlconf/error.hpp"
#include "nlconf/eval.hpp"

namespace nlconf::eval {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    fail(ErrorCode::LengthMismatch,
         std::string(what) + ": " + std::to_string(a) + " scores vs " + std::to_string(b) + " labels");
}

}  // namespace

double ConfusionCounts::tpr() const { return ratio(tp, tp + fn); }
double ConfusionCounts::fpr() const { return ratio(fp, fp + tn); }
double ConfusionCounts::accuracy() const { return ratio(tp + tn, total()); }

void ConfusionCounts::add(bool predicted_positive, bool truly_positive) {
  if (truly_positive) {
    ++(predicted_positive ? tp : fn);
  } else {
    ++(predicted_positive ? fp : tn);
  }
}

ConfusionCounts confusion_at_zero(std::span<const double> scores, std::span<const int> labels) {
  check_lengths(scores.size(), labels.size(), "confusion");
  ConfusionCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) c.add(scores[i] > 0.0, labels[i] > 0);
  return c;
}

RocCurve roc_auc(std::span<const double> scores, std::span<const int> labels) {
  check_lengths(scores.size(), labels.size(), "roc");
  std::size_t pos = 0;
  for (int y : labels) pos += y > 0 ? 1 : 0;
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) fail(ErrorCode::MissingClass, "ROC needs both positive and negative samples");
  for (double s : scores)
    if (std::isnan(s)) fail(ErrorCode::NumericalFailure, "NaN score");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  std::size_t tp = 0, fp = 0;
  double area2 = 0.0;  // twice the area, in units of pos*neg
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    const std::size_t tp0 = tp, fp0 = fp;
    for (; i < order.size() && scores[order[i]] == threshold; ++i) (labels[order[i]] > 0 ? tp : fp) += 1;
    area2 += static_cast<double>(fp - fp0) * static_cast<double>(tp + tp0);
    curve.points.push_back({ratio(fp, neg), ratio(tp, pos), threshold});
  }
  curve.auc = area2 / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
  return curve;
}

std::vector<std::size_t> balance_frames(std::span<const int> labels, std::uint64_t seed) {
  std::vector<std::size_t> positives, negatives;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] > 0 ? positives : negatives).push_back(i);
  if (positives.empty() || negatives.empty()) fail(ErrorCode::MissingClass, "balancing needs both classes");

  auto& minority = positives.size() <= negatives.size() ? positives : negatives;
  auto& majority = positives.size() <= negatives.size() ? negatives : positives;
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first minority.size() entries become a uniform sample.
  for (std::size_t i = 0; i < minority.size(); ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, majority.size() - 1);
    std::swap(majority[i], majority[pick(rng)]);
  }
  majority.resize(minority.size());

  std::vector<std::size_t> out;
  out.reserve(2 * minority.size());
  out.insert(out.end(), positives.begin(), positives.end());
  out.insert(out.end(), negatives.begin(), negatives.end());
  std::sort(out.begin(), out.end());
  return out;
}

learn::LabeledRows balance(const learn::LabeledRows& data, std::uint64_t seed) {
  check_lengths(static_cast<std::size_t>(data.rows.rows()), data.labels.size(), "balance");
  const auto keep = balance_frames(data.labels, seed);
  learn::LabeledRows out;
  out.rows.resize(static_cast<Eigen::Index>(keep.size()), data.rows.cols());
  out.labels.reserve(keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    out.rows.row(static_cast<Eigen::Index>(r)) = data.rows.row(static_cast<Eigen::Index>(keep[r]));
    out.labels.push_back(data.labels[keep[r]]);
  }
  return out;
}

double CvReport::min_accuracy() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : folds) m = std::min(m, f.accuracy);
  return folds.empty() ? 0.0 : m;
}

double CvReport::max_accuracy() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& f : folds) m = std::max(m, f.accuracy);
  return folds.empty() ? 0.0 : m;
}

double weighted_accuracy(std::span<const CvFold> folds) {
  double num = 0.0, den = 0.0;
  for (const auto& f : folds) {
    num += f.accuracy * static_cast<double>(f.confirmation_count);
    den += static_cast<double>(f.confirmation_count);
  }
  if (den == 0.0) fail(ErrorCode::NoConfirmations, "no fold has a confirmation to weight by");
  return num / den;
}

SegmentMetrics segment_metrics(std::span<const Label> decided, std::span<const Label> truth) {
  if (decided.size() != truth.size())
    fail(ErrorCode::LengthMismatch, std::to_string(decided.size()) + " decisions vs " +
                                        std::to_string(truth.size()) + " truth labels");
  SegmentMetrics m;
  for (std::size_t i = 0; i < decided.size(); ++i)
    m.counts.add(decided[i] == Label::Confirmation, truth[i] == Label::Confirmation);
  m.accuracy = m.counts.accuracy();
  return m;
}

SegmentMetrics segment_metrics(std::span<const pipeline::SegmentDecision> decisions, std::span<const Label> truth) {
  std::vector<Label> decided;
  decided.reserve(decisions.size());
  for (const auto& d : decisions) decided.push_back(d.decided_label);
  return segment_metrics(decided, truth);
}

}  // namespace nlconf::eval
