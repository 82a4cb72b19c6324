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

#include "nlconf/corpus.hpp"
#include "nlconf/error.hpp"

namespace nlconf::corpus {

std::size_t frame_count(std::size_t num_samples) {
  if (num_samples < kFrameLength) return 0;
  return (num_samples - kFrameLength) / kFrameShift + 1;
}

std::vector<Frame> frame_stream(const AudioSegment& segment) {
  const std::size_t n = frame_count(segment.samples.size());
  if (n == 0)
    fail(ErrorCode::SegmentTooShort, segment.id() + " has " + std::to_string(segment.samples.size()) +
                                         " samples, fewer than one frame");
  const std::string ref = segment.id();
  std::vector<Frame> frames(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto first = segment.samples.begin() + static_cast<std::ptrdiff_t>(i * kFrameShift);
    frames[i].samples.assign(first, first + kFrameLength);
    frames[i].index = i;
    frames[i].segment_ref = ref;
  }
  return frames;
}

std::vector<Frame> Framer::push(std::span<const double> samples) {
  buffer_.insert(buffer_.end(), samples.begin(), samples.end());
  std::vector<Frame> out;
  std::size_t offset = 0;
  while (buffer_.size() - offset >= kFrameLength) {
    Frame f;
    const auto first = buffer_.begin() + static_cast<std::ptrdiff_t>(offset);
    f.samples.assign(first, first + kFrameLength);
    f.index = next_index_++;
    out.push_back(std::move(f));
    offset += kFrameShift;
  }
  buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(offset));
  return out;
}

void Framer::reset() {
  buffer_.clear();
  next_index_ = 0;
}

}  // namespace nlconf::corpus
