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
#include <map>
#include <random>
#include <set>

#include "nlconf/corpus.hpp"
#include "nlconf/error.hpp"

namespace nlconf::corpus {

SpeakerAssignment assign_speakers(std::vector<SpeakerTally> tallies, double train_fraction,
                                  std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    fail(ErrorCode::InvalidArgument, "train_fraction must lie in (0, 1)");

  // Speakers without a single confirmation carry no positive examples.
  std::erase_if(tallies, [](const SpeakerTally& t) { return t.confirmations == 0; });
  if (tallies.empty()) fail(ErrorCode::NoConfirmations, "no speaker has a confirmation segment");
  if (tallies.size() < 2)
    fail(ErrorCode::SplitImpossible, "need at least two eligible speakers to populate both sides");

  std::sort(tallies.begin(), tallies.end(),
            [](const SpeakerTally& a, const SpeakerTally& b) { return a.speaker_id < b.speaker_id; });
  std::mt19937_64 rng(seed);
  std::shuffle(tallies.begin(), tallies.end(), rng);
  std::stable_sort(tallies.begin(), tallies.end(),
                   [](const SpeakerTally& a, const SpeakerTally& b) { return a.segments > b.segments; });

  std::size_t total = 0;
  for (const auto& t : tallies) total += t.segments;
  const double target = train_fraction * static_cast<double>(total) - 1e-9;

  SpeakerAssignment out;
  std::size_t in_train = 0;
  for (std::size_t i = 0; i < tallies.size(); ++i) {
    const bool last = i + 1 == tallies.size();
    if (static_cast<double>(in_train) < target && !(last && out.test.empty())) {
      out.train.push_back(tallies[i].speaker_id);
      in_train += tallies[i].segments;
    } else {
      out.test.push_back(tallies[i].speaker_id);
    }
  }
  return out;
}

CorpusSplit split_corpus(std::span<const AudioSegment> segments, double train_fraction,
                         std::uint64_t seed) {
  std::map<std::string, SpeakerTally> by_speaker;
  for (const auto& seg : segments) {
    auto& t = by_speaker[seg.speaker_id];
    t.speaker_id = seg.speaker_id;
    ++t.segments;
    if (seg.label == Label::Confirmation) ++t.confirmations;
  }
  std::vector<SpeakerTally> tallies;
  for (auto& [id, t] : by_speaker) tallies.push_back(t);

  const auto assignment = assign_speakers(std::move(tallies), train_fraction, seed);
  const std::set<std::string> train(assignment.train.begin(), assignment.train.end());
  const std::set<std::string> test(assignment.test.begin(), assignment.test.end());

  CorpusSplit split;
  split.seed = seed;
  for (const auto& seg : segments) {
    if (train.contains(seg.speaker_id)) {
      split.train.push_back(seg);
    } else if (test.contains(seg.speaker_id)) {
      split.test.push_back(seg);
    }
  }
  return split;
}

}  // namespace nlconf::corpus
