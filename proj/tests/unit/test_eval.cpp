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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "nlconf/error.hpp"
#include "nlconf/eval.hpp"
#include "oracles.hpp"

using namespace nlconf;
using namespace nlconf::eval;
using featset::FeatureKind;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an nlconf::Error");
  return ErrorCode::InvalidArgument;
}

learn::SegmentFeatures segment(const std::string& speaker, Label label, std::size_t frames, std::mt19937_64& rng) {
  learn::SegmentFeatures s;
  s.speaker_id = speaker;
  s.segment_id = speaker + ":" + std::to_string(rng() % 100000);
  s.label = label;
  s.rows.resize(static_cast<Eigen::Index>(frames), 2);
  std::normal_distribution<double> g(0.0, 0.7);
  for (Eigen::Index i = 0; i < s.rows.rows(); ++i) {
    s.rows(i, 0) = g(rng) + (label == Label::Confirmation ? 1.5 : -1.5);
    s.rows(i, 1) = g(rng);
    s.frame_indices.push_back(static_cast<std::size_t>(i));
  }
  return s;
}

}  // namespace

TEST_CASE("roc: examples") {
  const std::vector<double> sep = {0.9, 0.8, 0.1, 0.2};
  const std::vector<int> lab = {1, 1, -1, -1};
  CHECK(roc_auc(sep, lab).auc == 1.0);
  const std::vector<double> same(4, 0.3);
  const auto flat = roc_auc(same, lab);
  CHECK(flat.auc == 0.5);
  REQUIRE(flat.points.size() == 2);
  const std::vector<double> mixed = {0.9, 0.7, 0.8, 0.6};
  CHECK(roc_auc(mixed, lab).auc == doctest::Approx(0.75).epsilon(1e-15));
  const std::vector<int> one_class = {1, 1, 1, 1};
  CHECK(code_of([&] { roc_auc(sep, one_class); }) == ErrorCode::MissingClass);
}

TEST_CASE("roc: AUC equals the pairwise statistic and the curve is well formed") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 400)(rng);
    std::vector<double> s(n);
    std::vector<int> y(n);
    const int levels = trial % 3 == 0 ? 5 : 1000000;  // force ties on some sets
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = i == 0 ? 1 : i == 1 ? -1 : (std::bernoulli_distribution(0.3)(rng) ? 1 : -1);
      s[i] = std::uniform_int_distribution<int>(0, levels)(rng) / double(levels) + (y[i] > 0 ? 0.1 : 0.0);
    }
    const auto roc = roc_auc(s, y);
    CHECK(std::abs(roc.auc - oracle::pairwise_auc(s, y)) <= 1e-12);
    REQUIRE(!roc.points.empty());
    CHECK(roc.points.front().fpr == 0.0);
    CHECK(roc.points.front().tpr == 0.0);
    CHECK(roc.points.back().fpr == 1.0);
    CHECK(roc.points.back().tpr == 1.0);
    for (std::size_t i = 1; i < roc.points.size(); ++i) {
      CHECK(roc.points[i].fpr >= roc.points[i - 1].fpr);
      CHECK(roc.points[i].tpr >= roc.points[i - 1].tpr);
    }

    // Strictly monotone transforms leave the curve unchanged.
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = std::exp(3.0 * s[i]) - 7.0;
    const auto roc2 = roc_auc(t, y);
    CHECK(roc2.auc == roc.auc);
    REQUIRE(roc2.points.size() == roc.points.size());
    for (std::size_t i = 0; i < roc.points.size(); ++i) {
      CHECK(roc2.points[i].fpr == roc.points[i].fpr);
      CHECK(roc2.points[i].tpr == roc.points[i].tpr);
    }
  }
  std::ostringstream csv;
  write_roc_csv(csv, roc_auc(std::vector<double>{1, 0}, std::vector<int>{1, -1}));
  CHECK(csv.str().rfind("fpr,tpr,threshold\n", 0) == 0);
}

TEST_CASE("confusion: counts at threshold zero") {
  const std::vector<double> s = {0.5, -0.1, 0.0, 2.0, -3.0};
  const std::vector<int> y = {1, 1, -1, -1, -1};
  const auto c = confusion_at_zero(s, y);
  CHECK(c.tp == 1);
  CHECK(c.fn == 1);
  CHECK(c.fp == 1);
  CHECK(c.tn == 2);
  CHECK(c.total() == 5);
  CHECK(c.tpr() == 0.5);
  CHECK(c.fpr() == doctest::Approx(1.0 / 3.0));
  CHECK(c.accuracy() == doctest::Approx(0.6));
}

TEST_CASE("balance: count rule, determinism and no-op") {
  std::vector<int> labels(130, -1);
  for (int i = 0; i < 30; ++i) labels[i * 4] = 1;
  const auto idx = balance_frames(labels, 5);
  std::size_t pos = 0, neg = 0;
  for (auto i : idx) (labels[i] > 0 ? pos : neg)++;
  CHECK(pos == 30);
  CHECK(neg == 30);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
  CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
  CHECK(balance_frames(labels, 5) == idx);
  CHECK(balance_frames(labels, 6) != idx);

  const std::vector<int> even = {1, -1, 1, -1, -1, 1};
  CHECK(balance_frames(even, 3).size() == 6);
  const std::vector<int> single = {1, 1};
  CHECK(code_of([&] { balance_frames(single, 1); }) == ErrorCode::MissingClass);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> y(std::uniform_int_distribution<std::size_t>(2, 300)(rng));
    for (auto& v : y) v = std::bernoulli_distribution(0.2)(rng) ? 1 : -1;
    y[0] = 1;
    y[1] = -1;
    const auto b = balance_frames(y, rng());
    const auto p = std::count_if(b.begin(), b.end(), [&](std::size_t i) { return y[i] > 0; });
    CHECK(2 * static_cast<std::size_t>(p) == b.size());
  }
}

TEST_CASE("cv: weighted accuracy") {
  const std::vector<CvFold> folds = {{"a", 0.8, 3, 10}, {"b", 0.9, 1, 10}};
  CHECK(weighted_accuracy(folds) == doctest::Approx(0.825).epsilon(1e-15));
  const std::vector<CvFold> none = {{"a", 0.8, 0, 10}};
  CHECK(code_of([&] { weighted_accuracy(none); }) == ErrorCode::NoConfirmations);
}

TEST_CASE("cv: fold structure and exclusion of speakers without confirmations") {
  std::mt19937_64 rng(3);
  std::vector<learn::SegmentFeatures> data;
  for (const char* spk : {"a", "b"}) {
    data.push_back(segment(spk, Label::Confirmation, 6, rng));
    for (int i = 0; i < 3; ++i) data.push_back(segment(spk, Label::Other, 8, rng));
  }
  for (int i = 0; i < 3; ++i) data.push_back(segment("silent", Label::Other, 8, rng));
  const auto config = featset::FeatureSetConfig::make(FeatureKind::FormantSd);
  learn::TrainingOptions options;
  const auto folds = prepare_folds(data, config, options);
  REQUIRE(folds.size() == 2);
  CHECK(folds[0].speaker_id == "a");
  CHECK(folds[1].speaker_id == "b");
  for (const auto& f : folds) {
    // Trained on exactly the other speaker, balanced: 6 confirmation + 6 other frames.
    CHECK(f.train_rows.rows() == 12);
    CHECK(std::count(f.train_labels.begin(), f.train_labels.end(), 1) == 6);
    // Tested on all of the held-out speaker's frames, unbalanced.
    CHECK(f.test_rows.rows() == 6 + 24);
    CHECK(f.confirmation_count == 1);
  }
  const auto report = louo_cv(data, config, options);
  REQUIRE(report.folds.size() == 2);
  CHECK(report.weighted_accuracy >= report.min_accuracy() - 1e-12);
  CHECK(report.weighted_accuracy <= report.max_accuracy() + 1e-12);
  CHECK(report.weighted_accuracy > 0.9);

  std::vector<learn::SegmentFeatures> lonely(data.begin(), data.begin() + 4);
  CHECK(code_of([&] { prepare_folds(lonely, config, options); }) == ErrorCode::SplitImpossible);
  std::vector<learn::SegmentFeatures> no_conf(data.end() - 3, data.end());
  CHECK(code_of([&] { prepare_folds(no_conf, config, options); }) == ErrorCode::NoConfirmations);
}

TEST_CASE("cv: weighted accuracy lies within the fold range") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<CvFold> folds;
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    for (int i = 0; i < n; ++i)
      folds.push_back({"s", std::uniform_real_distribution<double>(0, 1)(rng),
                       std::uniform_int_distribution<std::size_t>(1, 9)(rng), 1});
    CvReport r;
    r.folds = folds;
    const double w = weighted_accuracy(folds);
    CHECK(w >= r.min_accuracy() - 1e-12);
    CHECK(w <= r.max_accuracy() + 1e-12);
  }
}

TEST_CASE("segments: metrics examples") {
  std::vector<Label> truth(415, Label::Other);
  for (int i = 0; i < 42; ++i) truth[i * 9] = Label::Confirmation;
  const auto perfect = segment_metrics(truth, truth);
  CHECK(perfect.accuracy == 1.0);
  CHECK(perfect.counts.fp == 0);
  CHECK(perfect.counts.fn == 0);
  CHECK(perfect.counts.tpr() == 1.0);
  CHECK(perfect.counts.fpr() == 0.0);
  CHECK(perfect.counts.tp == 42);
  CHECK(perfect.counts.tn == 373);

  std::mt19937_64 rng(5);
  std::vector<Label> guess(truth.size());
  for (auto& g : guess) g = std::bernoulli_distribution(0.3)(rng) ? Label::Confirmation : Label::Other;
  std::vector<Label> inverted(guess.size());
  for (std::size_t i = 0; i < guess.size(); ++i)
    inverted[i] = guess[i] == Label::Confirmation ? Label::Other : Label::Confirmation;
  CHECK(segment_metrics(inverted, truth).accuracy == doctest::Approx(1.0 - segment_metrics(guess, truth).accuracy));
  const std::vector<Label> short_truth(3, Label::Other);
  CHECK(code_of([&] { segment_metrics(guess, short_truth); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("evaluate: report on held-out synthetic speakers") {
  const auto bundle = fixture::bundle(FeatureKind::StackedFormants, 3);
  const auto test = fixture::segments(2, 6, 77);
  EvalOptions options;
  options.segment_roc = true;
  const auto report = evaluate_model(bundle, test, options);
  CHECK(report.kind == FeatureKind::StackedFormants);
  CHECK(report.raw_dimension == 30);
  CHECK(report.model_dimension == 30);
  CHECK(report.segments.counts.total() == test.size());
  CHECK(report.segment_roc.has_value());
  CHECK(report.frame_roc.auc > 0.5);
  CHECK(report.frame_counts.total() > 0);
  const auto json = report_to_json(report);
  CHECK(json.find("\"frame_roc\"") != std::string::npos);
  const std::vector<EvalReport> reports = {report};
  const auto table = format_table(reports);
  CHECK(table.find("stacked-formants") != std::string::npos);
  CHECK(table.find("AUC") != std::string::npos);
}
