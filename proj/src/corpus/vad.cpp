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

#include "nlconf/corpus.hpp"
#include "nlconf/error.hpp"

namespace nlconf::corpus {
namespace {

constexpr std::size_t kBlock = kSampleRate / 100;  // 10 ms

}  // namespace

StreamingVad::StreamingVad(VadConfig config) : config_(config) {
  if (!(config_.energy_threshold >= 0.0) || !(config_.hangover_ms >= 0.0))
    fail(ErrorCode::InvalidArgument, "VAD threshold and hangover must be non-negative");
  hangover_blocks_ = static_cast<std::size_t>(std::ceil(config_.hangover_ms / 10.0 - 1e-9));
  pending_.reserve(kBlock);
}

void StreamingVad::process_block(std::span<const double> block, std::vector<VadSpan>& out) {
  double energy = 0.0;
  for (double s : block) energy += s * s;
  const double rms = std::sqrt(energy / static_cast<double>(block.size()));
  const std::size_t block_begin = consumed_;
  const std::size_t block_end = consumed_ + block.size();
  consumed_ = block_end;

  if (rms > config_.energy_threshold) {
    if (!open_) {
      open_ = true;
      begin_ = block_begin;
    }
    last_active_end_ = block_end;
    inactive_run_ = 0;
    return;
  }
  if (!open_) return;
  ++inactive_run_;
  if (inactive_run_ >= hangover_blocks_) {
    const std::size_t end = last_active_end_ + hangover_blocks_ * kBlock;
    if (end - begin_ >= kFrameLength) out.push_back({begin_, end});
    open_ = false;
    inactive_run_ = 0;
  }
}

std::vector<VadSpan> StreamingVad::push(std::span<const double> samples) {
  std::vector<VadSpan> closed;
  std::size_t i = 0;
  if (!pending_.empty()) {
    const std::size_t take = std::min(kBlock - pending_.size(), samples.size());
    pending_.insert(pending_.end(), samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(take));
    i = take;
    if (pending_.size() < kBlock) return closed;
    process_block(pending_, closed);
    pending_.clear();
  }
  for (; i + kBlock <= samples.size(); i += kBlock) process_block(samples.subspan(i, kBlock), closed);
  pending_.assign(samples.begin() + static_cast<std::ptrdiff_t>(i), samples.end());
  return closed;
}

std::vector<VadSpan> StreamingVad::finish() {
  std::vector<VadSpan> closed;
  if (!pending_.empty()) {
    process_block(pending_, closed);
    pending_.clear();
  }
  if (open_) {
    const std::size_t end = std::min(consumed_, last_active_end_ + hangover_blocks_ * kBlock);
    if (end - begin_ >= kFrameLength) closed.push_back({begin_, end});
    open_ = false;
    inactive_run_ = 0;
  }
  return closed;
}

std::vector<AudioSegment> vad_segments(const AudioBuffer& audio, const VadConfig& config,
                                       std::string_view source_id, std::string_view speaker_id) {
  if (audio.samples.empty()) fail(ErrorCode::InvalidArgument, "VAD input is empty");
  StreamingVad vad(config);
  auto spans = vad.push(audio.samples);
  const auto tail = vad.finish();
  spans.insert(spans.end(), tail.begin(), tail.end());

  constexpr std::size_t per_ms = kSampleRate / 1000;
  std::vector<AudioSegment> out;
  out.reserve(spans.size());
  for (const auto& span : spans) {
    AudioSegment seg;
    seg.source_id = std::string(source_id);
    seg.speaker_id = std::string(speaker_id);
    seg.start_ms = static_cast<std::int64_t>(span.begin / per_ms);
    seg.end_ms = static_cast<std::int64_t>((span.end + per_ms - 1) / per_ms);
    seg.samples.assign(audio.samples.begin() + static_cast<std::ptrdiff_t>(span.begin),
                       audio.samples.begin() + static_cast<std::ptrdiff_t>(span.end));
    out.push_back(std::move(seg));
  }
  return out;
}

}  // namespace nlconf::corpus
