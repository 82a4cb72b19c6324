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

// Small trained models shared by the pipeline and eval tests.
#pragma once

#include <random>

#include "nlconf/eval.hpp"
#include "nlconf/learn/dataset.hpp"
#include "nlconf/synth.hpp"

namespace fixture {

inline std::vector<nlconf::corpus::AudioSegment> segments(std::size_t speakers, std::size_t per_speaker,
                                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<nlconf::corpus::AudioSegment> out;
  for (std::size_t s = 0; s < speakers; ++s) {
    const auto profile = nlconf::synth::random_speaker("spk" + std::to_string(s), rng);
    for (std::size_t i = 0; i < per_speaker; ++i) {
      const auto label = i % 3 == 0 ? nlconf::Label::Confirmation : nlconf::Label::Other;
      auto seg = nlconf::synth::random_segment(profile, label, rng);
      seg.source_id = profile.id + ".wav";
      seg.start_ms = static_cast<std::int64_t>(i) * 5000;
      seg.end_ms = seg.start_ms + static_cast<std::int64_t>(seg.samples.size() / 16);
      out.push_back(std::move(seg));
    }
  }
  return out;
}

inline nlconf::learn::ModelBundle bundle(nlconf::featset::FeatureKind kind, std::uint64_t seed = 1) {
  const auto config = nlconf::featset::FeatureSetConfig::make(kind);
  const auto feats = nlconf::learn::featurize(segments(3, 6, seed), config);
  const auto data = nlconf::eval::balance(nlconf::learn::gather(feats), seed);
  nlconf::learn::TrainingOptions options;
  options.params = nlconf::learn::default_hyperparams(kind);
  return nlconf::learn::train_bundle(data, config, options);
}

}  // namespace fixture
