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
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "nlconf/corpus.hpp"

namespace nlconf::synth {

/// Voice parameters shared by all tokens of one synthetic speaker.
struct SpeakerProfile {
  std::string id;
  double median_f0 = 120.0;       // Hz
  double confirmation_f1 = 350.0; // Hz, held for the whole token
  double confirmation_f2 = 1400.0;
  double tract_scale = 1.0;       // scales the formant targets of other speech
};

SpeakerProfile random_speaker(std::string id, std::mt19937_64& rng);

/// 300-700 ms pulse train with flat pitch through two fixed resonators.
std::vector<double> confirmation_token(const SpeakerProfile& speaker, std::mt19937_64& rng);
/// 0.5-3 s of syllable-like glides: both formants and F0 keep moving.
std::vector<double> other_token(const SpeakerProfile& speaker, std::mt19937_64& rng);

corpus::AudioSegment random_segment(const SpeakerProfile& speaker, Label label, std::mt19937_64& rng);

struct SynthConfig {
  std::size_t speakers = 10;
  std::size_t segments_per_speaker = 40;
  double confirmation_rate = 0.08;
  double gap_ms = 300.0;        // low-level noise between tokens
  double noise_level = 0.001;   // background noise RMS
  std::uint64_t seed = 7;
};

struct SynthFile {
  std::string name;  // relative WAV path
  corpus::AudioBuffer audio;
};

struct SynthCorpus {
  std::vector<SpeakerProfile> speakers;
  std::vector<SynthFile> files;
  std::vector<corpus::SegmentDescriptor> rows;
};

/// One WAV per speaker holding all of that speaker's tokens in shuffled
/// order, each speaker with at least one confirmation.
SynthCorpus make_corpus(const SynthConfig& config);

/// Writes the WAVs and `manifest.csv` into `dir`; returns the manifest path.
std::filesystem::path write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir);

}  // namespace nlconf::synth
