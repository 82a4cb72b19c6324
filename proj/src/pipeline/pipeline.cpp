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

#include <json.hpp>

#include "nlconf/error.hpp"
#include "nlconf/pipeline.hpp"

namespace nlconf::pipeline {
namespace {

constexpr double kFrameShiftMs = 1000.0 * kFrameShift / kSampleRate;
constexpr double kFrameLengthMs = 1000.0 * kFrameLength / kSampleRate;
constexpr std::size_t kSamplesPerMs = kSampleRate / 1000;

}  // namespace

double OnlineState::rolling_mean() const {
  const std::size_t n = std::min(votes_cast, kVoteWindow);
  if (n == 0) return 0.0;
  int sum = 0;
  for (std::size_t i = 0; i < n; ++i) sum += vote_ring[i];
  return static_cast<double>(sum) / static_cast<double>(n);
}

bool OnlineState::cast(int vote, std::size_t frame_index) {
  vote_ring[ring_head] = vote;
  ring_head = (ring_head + 1) % kVoteWindow;
  ++votes_cast;
  if (votes_cast < kVoteWindow) return false;
  const double mean = rolling_mean();
  max_rolling_mean = std::max(max_rolling_mean, mean);
  if (latched || !(mean > majority_threshold)) return false;
  latched = true;
  trigger_frame = frame_index;
  return true;
}

void OnlineState::reset() { *this = OnlineState(majority_threshold); }

SegmentDecision decide_segment(std::string segment_id, std::span<const double> frame_scores,
                               std::span<const std::size_t> frame_indices, const VoteConfig& vote) {
  if (frame_scores.size() != frame_indices.size())
    fail(ErrorCode::LengthMismatch, "one frame index per score required");
  OnlineState state(vote.majority_threshold);
  for (std::size_t i = 0; i < frame_scores.size(); ++i) state.cast(vote_of(frame_scores[i]), frame_indices[i]);

  SegmentDecision d;
  d.segment_id = std::move(segment_id);
  d.decided_label = state.latched ? Label::Confirmation : Label::Other;
  d.trigger_frame = state.trigger_frame;
  d.frame_scores.assign(frame_scores.begin(), frame_scores.end());
  d.frame_indices.assign(frame_indices.begin(), frame_indices.end());
  d.max_rolling_mean = state.max_rolling_mean;
  return d;
}

OfflineResult classify_offline(std::span<const corpus::AudioSegment> segments, const learn::ModelBundle& bundle,
                               const VoteConfig& vote) {
  bundle.validate();
  OfflineResult out;
  for (const auto& seg : segments) {
    const auto vectors = featset::extract(seg, bundle.feature_config);
    std::vector<double> scores;
    std::vector<std::size_t> indices;
    scores.reserve(vectors.size());
    indices.reserve(vectors.size());
    const std::string id = seg.id();
    for (const auto& v : vectors) {
      const double f = bundle.decision_value(v.values);
      scores.push_back(f);
      indices.push_back(v.frame_index);
      out.frames.push_back({id, v.frame_index, f, f > 0.0 ? Label::Confirmation : Label::Other});
    }
    out.decisions.push_back(decide_segment(id, scores, indices, vote));
  }
  return out;
}

OnlineDetector::OnlineDetector(const learn::ModelBundle& bundle, VoteConfig vote)
    : bundle_(bundle), vote_(vote), stream_(bundle.feature_config), state_(vote.majority_threshold) {
  bundle_.validate();
}

void OnlineDetector::begin_segment(std::string segment_id, std::int64_t start_ms) {
  reset_segment();
  active_ = true;
  segment_id_ = std::move(segment_id);
  start_ms_ = start_ms;
}

std::optional<TriggerEvent> OnlineDetector::consume(const featset::FeatureVector& v) {
  const double f = bundle_.decision_value(v.values);
  scores_.push_back(f);
  indices_.push_back(v.frame_index);
  if (!state_.cast(vote_of(f), v.frame_index)) return std::nullopt;
  TriggerEvent e;
  e.segment_id = segment_id_;
  e.segment_start_ms = start_ms_;
  e.frame_index = v.frame_index;
  e.trigger_time_ms = static_cast<double>(start_ms_) + static_cast<double>(v.frame_index) * kFrameShiftMs +
                      kFrameLengthMs;
  e.rolling_mean = state_.rolling_mean();
  return e;
}

std::optional<TriggerEvent> OnlineDetector::push_frame(std::span<const double> frame) {
  if (!active_) fail(ErrorCode::InvalidArgument, "push_frame outside a segment");
  ++state_.frames_seen;
  std::optional<TriggerEvent> fired;
  for (const auto& v : stream_.push(frame)) {
    auto e = consume(v);
    if (e) fired = std::move(e);
  }
  return fired;
}

std::pair<SegmentDecision, std::optional<TriggerEvent>> OnlineDetector::finish_segment() {
  if (!active_) fail(ErrorCode::InvalidArgument, "finish_segment outside a segment");
  std::optional<TriggerEvent> fired;
  for (const auto& v : stream_.finish()) {
    auto e = consume(v);
    if (e) fired = std::move(e);
  }
  SegmentDecision d;
  d.segment_id = segment_id_;
  d.decided_label = state_.latched ? Label::Confirmation : Label::Other;
  d.trigger_frame = state_.trigger_frame;
  d.frame_scores = std::move(scores_);
  d.frame_indices = std::move(indices_);
  d.max_rolling_mean = state_.max_rolling_mean;
  reset_segment();
  return {std::move(d), std::move(fired)};
}

void OnlineDetector::reset_segment() {
  stream_.reset();
  state_.reset();
  active_ = false;
  segment_id_.clear();
  start_ms_ = 0;
  scores_.clear();
  indices_.clear();
}

StreamListener::StreamListener(const learn::ModelBundle& bundle, std::string source_id, corpus::VadConfig vad,
                               VoteConfig vote)
    : source_id_(std::move(source_id)), vad_(vad), detector_(bundle, vote) {
  pending_.reserve(kFrameShift);
}

void StreamListener::emit(const std::optional<TriggerEvent>& event) {
  if (!event) return;
  triggers_.push_back(*event);
  if (sink_) sink_(*event);
}

void StreamListener::open_segment(std::size_t begin) {
  const auto start_ms = static_cast<std::int64_t>(begin / kSamplesPerMs);
  detector_.begin_segment(source_id_ + ":" + std::to_string(start_ms), start_ms);
  framer_.reset();
  seg_begin_ = begin;
  fed_upto_ = begin;
}

void StreamListener::feed(std::span<const double> chunk, std::size_t chunk_offset, std::size_t upto) {
  const std::size_t from = std::max(fed_upto_, chunk_offset);
  if (upto <= from) return;
  for (const auto& frame : framer_.push(chunk.subspan(from - chunk_offset, upto - from)))
    emit(detector_.push_frame(frame.samples));
  fed_upto_ = upto;
}

void StreamListener::step(std::span<const double> chunk, const std::vector<corpus::VadSpan>& closed, bool was_open) {
  const std::size_t offset = seen_;
  seen_ += chunk.size();
  for (const auto& span : closed) {
    if (!detector_.in_segment() || seg_begin_ != span.begin) open_segment(span.begin);
    feed(chunk, offset, span.end);
    auto [decision, fired] = detector_.finish_segment();
    emit(fired);
    decisions_.push_back(std::move(decision));
    spans_.push_back(span);
  }
  if (vad_.in_segment()) {
    if (!detector_.in_segment() || seg_begin_ != vad_.open_begin()) open_segment(vad_.open_begin());
    feed(chunk, offset, seen_);
  } else if (was_open && closed.empty() && detector_.in_segment()) {
    detector_.reset_segment();  // span was too short to report
  }
}

void StreamListener::push(std::span<const double> samples) {
  std::size_t i = 0;
  while (i < samples.size()) {
    const std::size_t take = std::min(kFrameShift - pending_.size(), samples.size() - i);
    pending_.insert(pending_.end(), samples.begin() + static_cast<std::ptrdiff_t>(i),
                    samples.begin() + static_cast<std::ptrdiff_t>(i + take));
    i += take;
    if (pending_.size() == kFrameShift) {
      const bool was_open = vad_.in_segment();
      const auto closed = vad_.push(pending_);
      step(pending_, closed, was_open);
      pending_.clear();
    }
  }
}

void StreamListener::finish() {
  const bool was_open = vad_.in_segment();
  vad_.push(pending_);  // partial block: buffered inside the VAD until finish()
  const auto closed = vad_.finish();
  step(pending_, closed, was_open);
  pending_.clear();
  if (detector_.in_segment()) detector_.reset_segment();
}

std::vector<SegmentDecision> listen_segments(std::span<const corpus::AudioSegment> segments,
                                             const learn::ModelBundle& bundle, const VoteConfig& vote,
                                             std::size_t chunk, std::vector<TriggerEvent>* triggers) {
  if (chunk == 0) fail(ErrorCode::InvalidArgument, "chunk size must be positive");
  OnlineDetector detector(bundle, vote);
  corpus::Framer framer;
  std::vector<SegmentDecision> out;
  out.reserve(segments.size());
  for (const auto& seg : segments) {
    if (corpus::frame_count(seg.samples.size()) < featset::required_frames(bundle.feature_config))
      fail(ErrorCode::SegmentTooShort, seg.id() + " is too short for " +
                                           std::string(featset::to_string(bundle.feature_config.kind)));
    detector.begin_segment(seg.id(), seg.start_ms);
    framer.reset();
    const std::span<const double> samples(seg.samples);
    for (std::size_t at = 0; at < samples.size(); at += chunk) {
      for (const auto& frame : framer.push(samples.subspan(at, std::min(chunk, samples.size() - at)))) {
        auto e = detector.push_frame(frame.samples);
        if (e && triggers) triggers->push_back(*e);
      }
    }
    auto [decision, fired] = detector.finish_segment();
    if (fired && triggers) triggers->push_back(*fired);
    out.push_back(std::move(decision));
  }
  return out;
}

std::string trigger_to_json(const TriggerEvent& event) {
  const nlohmann::json j = {{"segment_id", event.segment_id},
                            {"trigger_time_ms", event.trigger_time_ms},
                            {"rolling_mean", event.rolling_mean},
                            {"frame_index", event.frame_index}};
  return j.dump();
}

void write_offline_csv(std::ostream& out, std::span<const FramePrediction> frames) {
  out << "segment_id,frame_index,decision_value,prediction\n";
  const auto old_precision = out.precision(17);
  for (const auto& f : frames)
    out << f.segment_id << ',' << f.frame_index << ',' << f.decision_value << ',' << to_string(f.prediction) << '\n';
  out.precision(old_precision);
}

}  // namespace nlconf::pipeline
