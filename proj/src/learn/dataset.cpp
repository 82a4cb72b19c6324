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

#include "nlconf/error.hpp"
#include "nlconf/learn/dataset.hpp"

namespace nlconf::learn {

Eigen::MatrixXd to_matrix(std::span<const featset::FeatureVector> vectors, std::size_t dimension) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(vectors.size()), static_cast<Eigen::Index>(dimension));
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].values.size() != dimension) fail(ErrorCode::DimensionMismatch, "feature vector width");
    for (std::size_t c = 0; c < dimension; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = vectors[r].values[c];
  }
  return m;
}

std::vector<SegmentFeatures> featurize(std::span<const corpus::AudioSegment> segments,
                                       const featset::FeatureSetConfig& config) {
  std::vector<SegmentFeatures> out;
  out.reserve(segments.size());
  const std::size_t need = featset::required_frames(config);
  for (const auto& seg : segments) {
    if (corpus::frame_count(seg.samples.size()) < need) continue;
    const auto vectors = featset::extract(seg, config);
    SegmentFeatures sf;
    sf.segment_id = seg.id();
    sf.speaker_id = seg.speaker_id;
    sf.label = seg.label;
    sf.rows = to_matrix(vectors, config.raw_dimension);
    sf.frame_indices.reserve(vectors.size());
    for (const auto& v : vectors) sf.frame_indices.push_back(v.frame_index);
    out.push_back(std::move(sf));
  }
  return out;
}

LabeledRows gather(std::span<const SegmentFeatures* const> segments) {
  Eigen::Index total = 0, width = 0;
  for (const auto* s : segments) {
    total += s->rows.rows();
    if (s->rows.rows() > 0) width = s->rows.cols();
  }
  LabeledRows out;
  out.rows.resize(total, width);
  out.labels.reserve(static_cast<std::size_t>(total));
  Eigen::Index at = 0;
  for (const auto* s : segments) {
    if (s->rows.rows() == 0) continue;
    if (s->rows.cols() != width) fail(ErrorCode::DimensionMismatch, "segments differ in feature width");
    out.rows.middleRows(at, s->rows.rows()) = s->rows;
    at += s->rows.rows();
    out.labels.insert(out.labels.end(), static_cast<std::size_t>(s->rows.rows()),
                      s->label == Label::Confirmation ? 1 : -1);
  }
  return out;
}

LabeledRows gather(std::span<const SegmentFeatures> segments) {
  std::vector<const SegmentFeatures*> ptrs;
  ptrs.reserve(segments.size());
  for (const auto& s : segments) ptrs.push_back(&s);
  return gather(std::span<const SegmentFeatures* const>(ptrs));
}

SvmHyperParams default_hyperparams(featset::FeatureKind kind) {
  using featset::FeatureKind;
  switch (kind) {
    case FeatureKind::Mfcc: return {1.0, 0.5, 0.005};
    case FeatureKind::MfccDelta: return {1.0, 0.1, 0.005};
    case FeatureKind::StackedMfcc: return {1.0, 0.5, 0.005};
    case FeatureKind::FormantSd: return {5.0, 0.005, 0.05};
    case FeatureKind::StackedFormants: return {1.0, 0.5, 0.05};
    case FeatureKind::Pitch: return {5.0, 0.005, 0.05};
    case FeatureKind::StackedPitch: return {5.0, 0.5, 0.05};
  }
  return {};
}

ModelBundle fit_front_end(const Eigen::MatrixXd& rows, const featset::FeatureSetConfig& config,
                          const TrainingOptions& options) {
  if (rows.cols() != static_cast<Eigen::Index>(config.raw_dimension))
    fail(ErrorCode::DimensionMismatch, "training rows do not match the feature set width");
  ModelBundle bundle;
  bundle.feature_config = config;
  bundle.params = options.params;
  bundle.normalizer = options.normalize ? fit_normalizer(rows) : NormalizerStats::identity(rows.cols());
  if (featset::uses_pca(config.kind)) bundle.pca = fit_pca(bundle.normalizer.apply_rows(rows), options.pca_epsilon);
  return bundle;
}

ModelBundle train_bundle(const LabeledRows& data, const featset::FeatureSetConfig& config,
                         const TrainingOptions& options) {
  ModelBundle bundle = fit_front_end(data.rows, config, options);
  bundle.svm = train_svm(bundle.transform_rows(data.rows), data.labels, options.params, options.smo);
  bundle.validate();
  return bundle;
}

}  // namespace nlconf::learn
