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
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nlconf/corpus.hpp"
#include "nlconf/featset.hpp"
#include "nlconf/learn/model.hpp"

namespace nlconf::pipeline {

inline constexpr std::size_t kVoteWindow = 5;

struct VoteConfig {
  double majority_threshold = 0.0;  // trigger when the rolling mean is strictly above
};

/// Rolling vote state of one segment.
struct OnlineState {
  std::array<int, kVoteWindow> vote_ring{};
  std::size_t ring_head = 0;
  std::size_t votes_cast = 0;
  std::size_t frames_seen = 0;  // frames pushed, including warm-up frames
  bool latched = false;
  double majority_threshold = 0.0;
  std::optional<std::size_t> trigger_frame;  // frame index that fired the latch
  double max_rolling_mean = -1.0;            // over full windows; -1 if none

  explicit OnlineState(double threshold = 0.0) : majority_threshold(threshold) {}

  double rolling_mean() const;
  /// Adds one vote (+1 / -1) cast for `frame_index`. Returns true on the
  /// vote that latches the segment.
  bool cast(int vote, std::size_t frame_index);
  void reset();
};

inline int vote_of(double decision_value) { return decision_value > 0.0 ? 1 : -1; }

struct SegmentDecision {
  std::string segment_id;
  Label decided_label = Label::Other;
  std::optional<std::size_t> trigger_frame;
  std::vector<double> frame_scores;
  std::vector<std::size_t> frame_indices;
  double max_rolling_mean = -1.0;
};

/// Replays the online vote rule over stored per-frame decision values.
SegmentDecision decide_segment(std::string segment_id, std::span<const double> frame_scores,
                               std::span<const std::size_t> frame_indices, const VoteConfig& vote = {});

struct FramePrediction {
  std::string segment_id;
  std::size_t frame_index = 0;
  double decision_value = 0.0;
  Label prediction = Label::Other;
};

struct OfflineResult {
  std::vector<FramePrediction> frames;
  std::vector<SegmentDecision> decisions;
};

/// Scores every frame of every segment and derives the segment decisions by
/// replaying the vote rule. Throws SegmentTooShort for segments that cannot
/// fill the feature set's context.
OfflineResult classify_offline(std::span<const corpus::AudioSegment> segments, const learn::ModelBundle& bundle,
                               const VoteConfig& vote = {});

struct TriggerEvent {
  std::string segment_id;
  std::int64_t segment_start_ms = 0;
  std::size_t frame_index = 0;
  double trigger_time_ms = 0.0;  // end of the triggering frame, stream time
  double rolling_mean = 0.0;
};

/// Streams frames of one segment at a time through incremental feature
/// extraction, the model and the rolling vote.
class OnlineDetector {
 public:
  OnlineDetector(const learn::ModelBundle& bundle, VoteConfig vote = {});

  void begin_segment(std::string segment_id, std::int64_t start_ms = 0);
  /// `frame` is one raw 400-sample frame.
  std::optional<TriggerEvent> push_frame(std::span<const double> frame);
  /// Flushes trailing feature vectors and returns the segment's decision.
  std::pair<SegmentDecision, std::optional<TriggerEvent>> finish_segment();
  void reset_segment();

  const OnlineState& state() const { return state_; }
  bool in_segment() const { return active_; }

 private:
  std::optional<TriggerEvent> consume(const featset::FeatureVector& v);

  const learn::ModelBundle& bundle_;
  VoteConfig vote_;
  featset::FeatureStream stream_;
  OnlineState state_;
  bool active_ = false;
  std::string segment_id_;
  std::int64_t start_ms_ = 0;
  std::vector<double> scores_;
  std::vector<std::size_t> indices_;
};

/// Online classification of a raw sample stream: energy VAD, framing and
/// the detector run block by block on whatever chunk sizes are pushed.
class StreamListener {
 public:
  using TriggerSink = std::function<void(const TriggerEvent&)>;

  StreamListener(const learn::ModelBundle& bundle, std::string source_id, corpus::VadConfig vad = {},
                 VoteConfig vote = {});

  void set_trigger_sink(TriggerSink sink) { sink_ = std::move(sink); }
  void push(std::span<const double> samples);
  void finish();

  const std::vector<TriggerEvent>& triggers() const { return triggers_; }
  const std::vector<SegmentDecision>& decisions() const { return decisions_; }
  /// Segment boundaries in samples, one per decision.
  const std::vector<corpus::VadSpan>& spans() const { return spans_; }

 private:
  void step(std::span<const double> chunk, const std::vector<corpus::VadSpan>& closed, bool was_open);
  void open_segment(std::size_t begin);
  void feed(std::span<const double> chunk, std::size_t chunk_offset, std::size_t upto);
  void emit(const std::optional<TriggerEvent>& event);

  std::string source_id_;
  corpus::StreamingVad vad_;
  corpus::Framer framer_;
  OnlineDetector detector_;
  TriggerSink sink_;
  std::vector<double> pending_;
  std::size_t seen_ = 0;      // samples handed to the VAD
  std::size_t seg_begin_ = 0;
  std::size_t fed_upto_ = 0;  // stream offset up to which the framer has been fed
  std::vector<TriggerEvent> triggers_;
  std::vector<SegmentDecision> decisions_;
  std::vector<corpus::VadSpan> spans_;
};

/// Streams each segment's samples through a fresh detector in chunks of
/// `chunk` samples (manifest mode, no VAD).
std::vector<SegmentDecision> listen_segments(std::span<const corpus::AudioSegment> segments,
                                             const learn::ModelBundle& bundle, const VoteConfig& vote = {},
                                             std::size_t chunk = 160,
                                             std::vector<TriggerEvent>* triggers = nullptr);

std::string trigger_to_json(const TriggerEvent& event);
void write_offline_csv(std::ostream& out, std::span<const FramePrediction> frames);

}  // namespace nlconf::pipeline
