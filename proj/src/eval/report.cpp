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
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "nlconf/eval.hpp"

namespace nlconf::eval {
namespace {

nlohmann::json counts_json(const ConfusionCounts& c) {
  return {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn},
          {"tpr", c.tpr()}, {"fpr", c.fpr()}, {"accuracy", c.accuracy()}};
}

nlohmann::json roc_json(const RocCurve& curve) {
  auto points = nlohmann::json::array();
  for (const auto& p : curve.points) points.push_back({p.fpr, p.tpr});
  return {{"auc", curve.auc}, {"points", points}};
}

}  // namespace

EvalReport evaluate_model(const learn::ModelBundle& bundle, std::span<const corpus::AudioSegment> test,
                          const EvalOptions& options) {
  const std::size_t need = featset::required_frames(bundle.feature_config);
  std::vector<corpus::AudioSegment> usable;
  EvalReport report;
  for (const auto& seg : test) {
    if (corpus::frame_count(seg.samples.size()) < need) {
      ++report.skipped_segments;
    } else {
      usable.push_back(seg);
    }
  }

  const auto result = pipeline::classify_offline(usable, bundle, options.vote);
  std::vector<double> scores;
  std::vector<int> labels;
  std::vector<Label> truth;
  std::vector<double> seg_scores;
  std::vector<int> seg_labels;
  for (std::size_t i = 0; i < usable.size(); ++i) {
    const auto& d = result.decisions[i];
    const int y = usable[i].label == Label::Confirmation ? 1 : -1;
    scores.insert(scores.end(), d.frame_scores.begin(), d.frame_scores.end());
    labels.insert(labels.end(), d.frame_scores.size(), y);
    truth.push_back(usable[i].label);
    seg_scores.push_back(d.max_rolling_mean);
    seg_labels.push_back(y);
  }

  report.kind = bundle.feature_config.kind;
  report.raw_dimension = bundle.feature_config.raw_dimension;
  report.model_dimension = static_cast<std::size_t>(bundle.model_dimension());
  report.params = bundle.params;
  report.frame_roc = roc_auc(scores, labels);
  report.frame_counts = confusion_at_zero(scores, labels);
  report.segments = segment_metrics(result.decisions, truth);
  if (options.segment_roc) report.segment_roc = roc_auc(seg_scores, seg_labels);
  return report;
}

std::string report_to_json(const EvalReport& r) {
  nlohmann::json j;
  j["feature_set"] = std::string(featset::to_string(r.kind));
  j["raw_dimension"] = r.raw_dimension;
  j["model_dimension"] = r.model_dimension;
  j["hyperparams"] = {{"C", r.params.C}, {"eps", r.params.eps}, {"gamma", r.params.gamma}};
  if (r.cv) {
    auto folds = nlohmann::json::array();
    for (const auto& f : r.cv->folds)
      folds.push_back({{"speaker_id", f.speaker_id},
                       {"accuracy", f.accuracy},
                       {"confirmation_count", f.confirmation_count},
                       {"test_frames", f.test_frames}});
    j["cv"] = {{"folds", folds},
               {"weighted_accuracy", r.cv->weighted_accuracy},
               {"min_accuracy", r.cv->min_accuracy()},
               {"max_accuracy", r.cv->max_accuracy()}};
  } else {
    j["cv"] = nullptr;
  }
  j["frame"] = counts_json(r.frame_counts);
  j["frame_roc"] = roc_json(r.frame_roc);
  j["segment"] = counts_json(r.segments.counts);
  j["segment_accuracy"] = r.segments.accuracy;
  j["segment_roc"] = r.segment_roc ? roc_json(*r.segment_roc) : nlohmann::json(nullptr);
  j["skipped_segments"] = r.skipped_segments;
  return j.dump(2);
}

void write_roc_csv(std::ostream& out, const RocCurve& curve) {
  out << "fpr,tpr,threshold\n";
  const auto old_precision = out.precision(17);
  for (const auto& p : curve.points) out << p.fpr << ',' << p.tpr << ',' << p.threshold << '\n';
  out.precision(old_precision);
}

std::string format_table(std::span<const EvalReport> reports) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %9s %15s %8s %8s %6s %9s\n", "Feature set", "Dimension", "CV (%)",
                "TPR (%)", "FPR (%)", "AUC", "Seg. acc");
  out << line;
  for (const auto& r : reports) {
    std::string dim = std::to_string(r.raw_dimension);
    if (r.model_dimension != r.raw_dimension) dim += "/" + std::to_string(r.model_dimension);
    char cv[64] = "-";
    if (r.cv) std::snprintf(cv, sizeof cv, "%.1f - %.1f", 100.0 * r.cv->min_accuracy(), 100.0 * r.cv->max_accuracy());
    std::snprintf(line, sizeof line, "%-18s %9s %15s %8.1f %8.1f %6.3f %8.1f%%\n",
                  std::string(featset::to_string(r.kind)).c_str(), dim.c_str(), cv, 100.0 * r.frame_counts.tpr(),
                  100.0 * r.frame_counts.fpr(), r.frame_roc.auc, 100.0 * r.segments.accuracy);
    out << line;
  }
  return out.str();
}

}  // namespace nlconf::eval
