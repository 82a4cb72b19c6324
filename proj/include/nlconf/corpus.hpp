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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nlconf {

inline constexpr int kSampleRate = 16000;
inline constexpr std::size_t kFrameLength = 400;  // 25 ms at 16 kHz
inline constexpr std::size_t kFrameShift = 160;   // 10 ms at 16 kHz

enum class Label { Other, Confirmation };

std::string_view to_string(Label label);

}  // namespace nlconf

namespace nlconf::corpus {

struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = kSampleRate;

  double duration_ms() const {
    return 1000.0 * static_cast<double>(samples.size()) / sample_rate;
  }
};

/// Contiguous span of speech. VAD output carries Label::Other until
/// annotated.
struct AudioSegment {
  std::string source_id;
  std::string speaker_id;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  std::vector<double> samples;
  Label label = Label::Other;

  /// "<source>:<start>-<end>", unique within a corpus.
  std::string id() const;
};

struct Frame {
  std::vector<double> samples;
  std::size_t index = 0;
  std::string segment_ref;
};

// ---------------------------------------------------------------------------
// WAV I/O (RIFF, PCM16, mono, 16 kHz)

AudioBuffer load_wav(const std::filesystem::path& path);
AudioBuffer decode_wav(std::span<const std::uint8_t> bytes);

/// Samples are clamped to [-1, 1] and quantized to 16 bits.
void save_wav(const std::filesystem::path& path, const AudioBuffer& audio);
std::vector<std::uint8_t> encode_wav(const AudioBuffer& audio);

// ---------------------------------------------------------------------------
// Manifest CSV: wav_path,speaker_id,start_ms,end_ms,label

struct SegmentDescriptor {
  std::string wav_path;
  std::string speaker_id;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  Label label = Label::Other;

  bool operator==(const SegmentDescriptor&) const = default;
};

/// Parses manifest text; performs no file-system checks.
std::vector<SegmentDescriptor> read_manifest(std::istream& in);
void write_manifest(std::ostream& out,
                    std::span<const SegmentDescriptor> rows);

/// Parses a manifest file and checks every row against the duration of the
/// referenced WAV (relative paths resolve against the manifest directory).
std::vector<SegmentDescriptor> parse_manifest(
    const std::filesystem::path& path);

/// Loads audio for each descriptor and slices the segments out of it.
std::vector<AudioSegment> load_segments(
    std::span<const SegmentDescriptor> rows,
    const std::filesystem::path& base_dir);

// ---------------------------------------------------------------------------
// Voice activity detection

struct VadConfig {
  double energy_threshold = 0.01;  // block RMS, full scale
  double hangover_ms = 200.0;
};

struct VadSpan {
  std::size_t begin = 0;  // sample offsets, half-open
  std::size_t end = 0;
};

/// Incremental energy VAD over 10 ms blocks. A segment opens at the first
/// block whose RMS exceeds the threshold and closes once `hangover_ms` of
/// consecutive inactive audio has elapsed; the hangover tail belongs to the
/// segment.
class StreamingVad {
 public:
  explicit StreamingVad(VadConfig config = {});

  /// Feeds samples; returns segments that closed during this call.
  std::vector<VadSpan> push(std::span<const double> samples);
  /// Closes any open segment at the end of the stream.
  std::vector<VadSpan> finish();

  bool in_segment() const { return open_; }
  /// Sample offset where the open segment began; valid if in_segment().
  std::size_t open_begin() const { return begin_; }
  std::size_t samples_seen() const { return consumed_; }

 private:
  void process_block(std::span<const double> block, std::vector<VadSpan>& out);

  VadConfig config_;
  std::size_t hangover_blocks_;
  std::vector<double> pending_;
  std::size_t consumed_ = 0;  // samples in completed blocks
  bool open_ = false;
  std::size_t begin_ = 0;
  std::size_t last_active_end_ = 0;
  std::size_t inactive_run_ = 0;
};

std::vector<AudioSegment> vad_segments(const AudioBuffer& audio,
                                       const VadConfig& config = {},
                                       std::string_view source_id = "stream",
                                       std::string_view speaker_id = "");

// ---------------------------------------------------------------------------
// Framing

std::size_t frame_count(std::size_t num_samples);
std::vector<Frame> frame_stream(const AudioSegment& segment);

/// Incremental framer: accepts arbitrary sample chunks and yields every
/// complete 400-sample frame at 160-sample hops.
class Framer {
 public:
  std::vector<Frame> push(std::span<const double> samples);
  void reset();
  std::size_t frames_emitted() const { return next_index_; }

 private:
  std::vector<double> buffer_;
  std::size_t next_index_ = 0;
};

// ---------------------------------------------------------------------------
// Speaker-independent split

struct CorpusSplit {
  std::vector<AudioSegment> train;
  std::vector<AudioSegment> test;
  std::uint64_t seed = 0;
};

/// Same assignment as split_corpus, expressed over speaker ids only.
struct SpeakerAssignment {
  std::vector<std::string> train;
  std::vector<std::string> test;
};

struct SpeakerTally {
  std::string speaker_id;
  std::size_t segments = 0;
  std::size_t confirmations = 0;
};

SpeakerAssignment assign_speakers(std::vector<SpeakerTally> tallies,
                                  double train_fraction, std::uint64_t seed);

CorpusSplit split_corpus(std::span<const AudioSegment> segments,
                         double train_fraction, std::uint64_t seed);

}  // namespace nlconf::corpus
