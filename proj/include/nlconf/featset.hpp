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

#include <array>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlconf/corpus.hpp"
#include "nlconf/dsp/window.hpp"

namespace nlconf::featset {

enum class FeatureKind { Mfcc, MfccDelta, StackedMfcc, FormantSd, StackedFormants, Pitch, StackedPitch };

inline constexpr std::array<FeatureKind, 7> kAllKinds = {
    FeatureKind::Mfcc,      FeatureKind::MfccDelta, FeatureKind::StackedMfcc,  FeatureKind::FormantSd,
    FeatureKind::StackedFormants, FeatureKind::Pitch, FeatureKind::StackedPitch};

inline constexpr std::size_t kStackDepth = 15;

std::string_view to_string(FeatureKind kind);
/// Accepts the names produced by to_string ("stacked-formants", ...).
FeatureKind parse_feature_kind(std::string_view name);

struct FeatureSetConfig {
  FeatureKind kind = FeatureKind::StackedFormants;
  std::size_t stack_depth = kStackDepth;
  std::size_t raw_dimension = 30;

  static FeatureSetConfig make(FeatureKind kind);
  bool operator==(const FeatureSetConfig&) const = default;
};

std::size_t dimension(const FeatureSetConfig& config);
dsp::WindowKind window_kind_for(const FeatureSetConfig& config);
/// Frames of history the kind needs before it emits anything (1 for
/// single-frame kinds, 7 for the delta kind, stack depth for stacked/SD).
std::size_t required_frames(const FeatureSetConfig& config);
/// Whether the kind is reduced by PCA before classification.
bool uses_pca(FeatureKind kind);

struct FeatureVector {
  std::vector<double> values;
  std::size_t frame_index = 0;  // frame the vector describes
  FeatureKind kind = FeatureKind::Mfcc;
};

/// Ring of the last `depth` per-frame vectors, concatenated oldest first.
class StackBuffer {
 public:
  explicit StackBuffer(std::size_t depth) : depth_(depth) {}

  void push(std::vector<double> base);
  bool full() const { return ring_.size() == depth_; }
  std::size_t size() const { return ring_.size(); }
  std::vector<double> concatenated() const;
  const std::deque<std::vector<double>>& entries() const { return ring_; }
  void clear() { ring_.clear(); }

 private:
  std::size_t depth_;
  std::deque<std::vector<double>> ring_;
};

/// Per-frame base measurement of a kind's family: 13 MFCCs, (F1, F2), or
/// pitch. `frame` is raw (unwindowed) audio.
std::vector<double> base_features(std::span<const double> frame, FeatureKind kind);

/// Incremental feature extractor for one segment. Stacked and SD kinds use
/// causal alignment (frames t-14 .. t describe frame t). The delta kind
/// applies the Savitzky-Golay filters centred on each frame with edge
/// replication, so it trails the input by three frames and releases the
/// last three vectors in finish().
class FeatureStream {
 public:
  explicit FeatureStream(FeatureSetConfig config);

  const FeatureSetConfig& config() const { return config_; }

  std::vector<FeatureVector> push(std::span<const double> frame);
  std::vector<FeatureVector> finish();
  void reset();
  std::size_t frames_seen() const { return frames_seen_; }

 private:
  FeatureVector delta_vector(std::size_t j) const;
  std::vector<FeatureVector> drain_delta(std::size_t up_to_inclusive);

  FeatureSetConfig config_;
  StackBuffer stack_;
  std::vector<std::vector<double>> mfcc_history_;  // delta kind only
  std::size_t next_delta_ = 0;
  std::size_t frames_seen_ = 0;
};

/// Runs a FeatureStream over a segment's frames. Throws SegmentTooShort
/// when fewer than required_frames(config) frames are supplied.
std::vector<FeatureVector> extract(std::span<const corpus::Frame> frames, const FeatureSetConfig& config);
std::vector<FeatureVector> extract(const corpus::AudioSegment& segment, const FeatureSetConfig& config);

// Feature dumps: <stem>.csv (frame_index, x0 .. x{d-1}) plus <stem>.json.
void write_feature_dump(const std::filesystem::path& dir, const std::string& stem,
                        std::span<const FeatureVector> vectors, const FeatureSetConfig& config);
std::vector<FeatureVector> read_feature_dump(const std::filesystem::path& dir, const std::string& stem,
                                             FeatureSetConfig* config = nullptr);

}  // namespace nlconf::featset
