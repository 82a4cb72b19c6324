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

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "nlconf/corpus.hpp"
#include "nlconf/error.hpp"
#include "oracles.hpp"

using namespace nlconf;
using namespace nlconf::corpus;

namespace {

std::vector<std::uint8_t> wav_header(std::uint16_t format, std::uint16_t channels, std::uint32_t rate,
                                     std::uint16_t bits, std::uint32_t data_bytes) {
  std::vector<std::uint8_t> b;
  auto tag = [&](const char* t) { b.insert(b.end(), t, t + 4); };
  auto u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  auto u16 = [&](std::uint16_t v) {
    b.push_back(static_cast<std::uint8_t>(v));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
  };
  tag("RIFF");
  u32(36 + data_bytes);
  tag("WAVE");
  tag("fmt ");
  u32(16);
  u16(format);
  u16(channels);
  u32(rate);
  u32(rate * channels * bits / 8);
  u16(static_cast<std::uint16_t>(channels * bits / 8));
  u16(bits);
  tag("data");
  u32(data_bytes);
  return b;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("nlconf-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an nlconf::Error");
  return ErrorCode::InvalidArgument;
}

AudioSegment make_segment(std::string speaker, Label label, std::int64_t start = 0) {
  AudioSegment s;
  s.source_id = speaker + ".wav";
  s.speaker_id = std::move(speaker);
  s.label = label;
  s.start_ms = start;
  s.end_ms = start + 100;
  s.samples.assign(1600, 0.0);
  return s;
}

}  // namespace

TEST_CASE("wav: one second of digital silence") {
  AudioBuffer silence;
  silence.samples.assign(16000, 0.0);
  const auto audio = decode_wav(encode_wav(silence));
  CHECK(audio.sample_rate == 16000);
  REQUIRE(audio.samples.size() == 16000);
  CHECK(std::all_of(audio.samples.begin(), audio.samples.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("wav: integer scaling of full-scale samples") {
  auto bytes = wav_header(1, 1, 16000, 16, 4);
  for (std::uint16_t v : {std::uint16_t{0x7FFF}, std::uint16_t{0x8000}}) {
    bytes.push_back(static_cast<std::uint8_t>(v));
    bytes.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  const auto audio = decode_wav(bytes);
  REQUIRE(audio.samples.size() == 2);
  CHECK(audio.samples[0] == doctest::Approx(32767.0 / 32768.0).epsilon(1e-15));
  CHECK(audio.samples[1] == -1.0);
}

TEST_CASE("wav: format checks") {
  CHECK(code_of([] { decode_wav(wav_header(1, 2, 44100, 16, 0)); }) == ErrorCode::UnsupportedFormat);
  CHECK(code_of([] { decode_wav(wav_header(1, 1, 44100, 16, 0)); }) == ErrorCode::UnsupportedFormat);
  CHECK(code_of([] { decode_wav(wav_header(1, 1, 16000, 8, 0)); }) == ErrorCode::UnsupportedFormat);
  CHECK(code_of([] { decode_wav(wav_header(3, 1, 16000, 32, 0)); }) == ErrorCode::UnsupportedFormat);
  auto truncated = wav_header(1, 1, 16000, 16, 100);
  truncated.resize(truncated.size() + 10);
  CHECK(code_of([&] { decode_wav(truncated); }) == ErrorCode::CorruptFile);
  const std::vector<std::uint8_t> junk = {'R', 'I', 'F', 'F', 0, 0};
  CHECK(code_of([&] { decode_wav(junk); }) == ErrorCode::CorruptFile);
  std::vector<std::uint8_t> not_riff(44, 0);
  CHECK(code_of([&] { decode_wav(not_riff); }) == ErrorCode::UnsupportedFormat);
}

TEST_CASE("wav: encode/decode round trip within one quantization step") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  AudioBuffer a;
  for (int i = 0; i < 1000; ++i) a.samples.push_back(u(rng));
  const auto b = decode_wav(encode_wav(a));
  REQUIRE(b.samples.size() == a.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(std::abs(a.samples[i] - b.samples[i]) <= 0.5 / 32768.0 + 1e-15);
}

TEST_CASE("manifest: row mapping, labels and errors") {
  std::istringstream in("wav_path,speaker_id,start_ms,end_ms,label\na.wav,spk1,0,500,confirmation\n"
                        "b.wav, spk2 ,100,900,OTHER\n\n");
  const auto rows = read_manifest(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == SegmentDescriptor{"a.wav", "spk1", 0, 500, Label::Confirmation});
  CHECK(rows[1] == SegmentDescriptor{"b.wav", "spk2", 100, 900, Label::Other});

  std::istringstream bad("wav_path,speaker_id,start_ms,end_ms,label\na.wav,spk1,0,500,confirmation\na.wav,spk1,0,500,yes\n");
  try {
    read_manifest(bad);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  std::istringstream empty("");
  CHECK(read_manifest(empty).empty());
  std::istringstream header_only("wav_path,speaker_id,start_ms,end_ms,label\n");
  CHECK(read_manifest(header_only).empty());

  for (const char* row : {"a.wav,s,500,400,other", "a.wav,s,-5,400,other", "a.wav,s,0,20,other", "a.wav,s,x,400,other",
                          "a.wav,s,0,400", ",s,0,400,other"}) {
    std::istringstream one(std::string("wav_path,speaker_id,start_ms,end_ms,label\n") + row + "\n");
    CHECK_MESSAGE(code_of([&] { read_manifest(one); }) == ErrorCode::ParseError, row);
  }
}

TEST_CASE("manifest: write then read is the identity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SegmentDescriptor> rows;
    const int n = std::uniform_int_distribution<int>(0, 30)(rng);
    for (int i = 0; i < n; ++i) {
      const auto start = std::uniform_int_distribution<std::int64_t>(0, 100000)(rng);
      const auto len = std::uniform_int_distribution<std::int64_t>(25, 5000)(rng);
      rows.push_back({"dir/f" + std::to_string(i % 4) + ".wav", "spk" + std::to_string(i % 3), start, start + len,
                      i % 5 == 0 ? Label::Confirmation : Label::Other});
    }
    std::stringstream io;
    write_manifest(io, rows);
    CHECK(read_manifest(io) == rows);
  }
}

TEST_CASE("manifest: parse_manifest checks ranges against the audio") {
  const auto dir = temp_dir("manifest");
  AudioBuffer a;
  a.samples.assign(16000, 0.1);
  save_wav(dir / "a.wav", a);
  {
    std::ofstream m(dir / "ok.csv");
    m << "wav_path,speaker_id,start_ms,end_ms,label\na.wav,s1,0,1000,other\n";
  }
  const auto rows = parse_manifest(dir / "ok.csv");
  REQUIRE(rows.size() == 1);
  const auto segs = load_segments(rows, dir);
  CHECK(segs[0].samples.size() == 16000);
  CHECK(segs[0].id() == "a.wav:0-1000");
  {
    std::ofstream m(dir / "bad.csv");
    m << "wav_path,speaker_id,start_ms,end_ms,label\na.wav,s1,0,1001,other\n";
  }
  CHECK(code_of([&] { parse_manifest(dir / "bad.csv"); }) == ErrorCode::RangeError);
  CHECK(code_of([&] { parse_manifest(dir / "missing.csv"); }) == ErrorCode::IoError);
}

TEST_CASE("vad: silence, a padded tone, and two bursts") {
  AudioBuffer silence;
  silence.samples.assign(32000, 0.0);
  CHECK(vad_segments(silence, {}).empty());

  AudioBuffer tone;
  tone.samples.assign(8000, 0.0);
  const auto s = oracle::sine(440.0, 16000, 0.5);
  tone.samples.insert(tone.samples.end(), s.begin(), s.end());
  tone.samples.resize(tone.samples.size() + 8000, 0.0);
  const auto segs = vad_segments(tone, {});
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].start_ms == 500);
  // Ends at the tone end plus the 200 ms hangover, clipped to the stream.
  CHECK(segs[0].end_ms == 1700);

  AudioBuffer bursts;
  for (int k = 0; k < 2; ++k) {
    const auto b = oracle::sine(300.0, 4800, 0.3);
    bursts.samples.insert(bursts.samples.end(), b.begin(), b.end());
    bursts.samples.resize(bursts.samples.size() + 8000, 0.0);
  }
  CHECK(vad_segments(bursts, {}).size() == 2);

  // A gap shorter than the hangover does not split.
  AudioBuffer close;
  for (int k = 0; k < 2; ++k) {
    const auto b = oracle::sine(300.0, 4800, 0.3);
    close.samples.insert(close.samples.end(), b.begin(), b.end());
    close.samples.resize(close.samples.size() + 1600, 0.0);
  }
  CHECK(vad_segments(close, {}).size() == 1);
}

TEST_CASE("vad: streaming in arbitrary chunks equals one-shot processing") {
  std::mt19937_64 rng(5);
  std::vector<double> x;
  for (int k = 0; k < 6; ++k) {
    const auto b = oracle::sine(200.0 + 50 * k, 1000 + 1700 * k, 0.2);
    x.insert(x.end(), b.begin(), b.end());
    x.resize(x.size() + 2000 + 1500 * (k % 3), 0.0);
  }
  StreamingVad whole;
  auto expected = whole.push(x);
  for (const auto& s : whole.finish()) expected.push_back(s);

  for (int trial = 0; trial < 10; ++trial) {
    StreamingVad vad;
    std::vector<VadSpan> got;
    std::size_t at = 0;
    while (at < x.size()) {
      const auto n = std::min<std::size_t>(x.size() - at, std::uniform_int_distribution<std::size_t>(1, 700)(rng));
      for (const auto& s : vad.push(std::span<const double>(x).subspan(at, n))) got.push_back(s);
      at += n;
    }
    for (const auto& s : vad.finish()) got.push_back(s);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].begin == expected[i].begin);
      CHECK(got[i].end == expected[i].end);
    }
  }
}

TEST_CASE("vad: re-segmenting its own output reproduces the segment count") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    AudioBuffer audio;
    const int bursts = std::uniform_int_distribution<int>(1, 5)(rng);
    for (int k = 0; k < bursts; ++k) {
      audio.samples.resize(audio.samples.size() + std::uniform_int_distribution<std::size_t>(100, 9000)(rng), 0.0);
      const auto b = oracle::sine(150.0 + 40 * k, std::uniform_int_distribution<std::size_t>(500, 8000)(rng), 0.3);
      audio.samples.insert(audio.samples.end(), b.begin(), b.end());
    }
    audio.samples.resize(audio.samples.size() + 500, 0.0);
    const auto first = vad_segments(audio, {});
    AudioBuffer joined;
    for (const auto& s : first) {
      joined.samples.insert(joined.samples.end(), s.samples.begin(), s.samples.end());
      joined.samples.resize(joined.samples.size() + 4000, 0.0);  // >= hangover of silence
    }
    if (first.empty()) continue;
    CHECK(vad_segments(joined, {}).size() == first.size());
  }
}

TEST_CASE("framing: counts and overlap") {
  CHECK(frame_count(400) == 1);
  CHECK(frame_count(16000) == 98);
  CHECK(frame_count(399) == 0);
  AudioSegment seg;
  seg.samples.assign(399, 0.0);
  CHECK(code_of([&] { frame_stream(seg); }) == ErrorCode::SegmentTooShort);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  seg.samples.clear();
  for (int i = 0; i < 5000; ++i) seg.samples.push_back(u(rng));
  const auto frames = frame_stream(seg);
  REQUIRE(frames.size() == frame_count(5000));
  for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
    CHECK(frames[i].index == i);
    CHECK(std::equal(frames[i].samples.begin() + 160, frames[i].samples.end(), frames[i + 1].samples.begin()));
  }

  Framer framer;
  std::vector<Frame> streamed;
  std::size_t at = 0;
  while (at < seg.samples.size()) {
    const auto n = std::min<std::size_t>(seg.samples.size() - at, std::uniform_int_distribution<std::size_t>(1, 900)(rng));
    for (auto& f : framer.push(std::span<const double>(seg.samples).subspan(at, n))) streamed.push_back(std::move(f));
    at += n;
  }
  REQUIRE(streamed.size() == frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) CHECK(streamed[i].samples == frames[i].samples);
}

TEST_CASE("split: 10 speakers x 10 segments at 0.7") {
  std::vector<AudioSegment> segs;
  for (int s = 0; s < 10; ++s)
    for (int i = 0; i < 10; ++i)
      segs.push_back(make_segment("spk" + std::to_string(s), i == 0 ? Label::Confirmation : Label::Other, i * 200));
  const auto split = split_corpus(segs, 0.7, 42);
  std::set<std::string> train, test;
  for (const auto& s : split.train) train.insert(s.speaker_id);
  for (const auto& s : split.test) test.insert(s.speaker_id);
  CHECK(train.size() == 7);
  CHECK(test.size() == 3);
  CHECK(split.train.size() == 70);
  for (const auto& id : train) CHECK(!test.contains(id));

  const auto again = split_corpus(segs, 0.7, 42);
  REQUIRE(again.train.size() == split.train.size());
  for (std::size_t i = 0; i < again.train.size(); ++i) CHECK(again.train[i].id() == split.train[i].id());
}

TEST_CASE("split: degenerate inputs") {
  std::vector<AudioSegment> one = {make_segment("a", Label::Confirmation), make_segment("b", Label::Other)};
  CHECK(code_of([&] { split_corpus(one, 0.7, 1); }) == ErrorCode::SplitImpossible);
  std::vector<AudioSegment> none = {make_segment("a", Label::Other), make_segment("b", Label::Other)};
  CHECK(code_of([&] { split_corpus(none, 0.7, 1); }) == ErrorCode::NoConfirmations);
}

TEST_CASE("split: speaker-disjoint for random configurations") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<AudioSegment> segs;
    const int speakers = std::uniform_int_distribution<int>(2, 12)(rng);
    std::set<std::string> eligible;
    for (int s = 0; s < speakers; ++s) {
      const int n = std::uniform_int_distribution<int>(1, 20)(rng);
      const bool has_conf = s < 2 || std::bernoulli_distribution(0.7)(rng);
      if (has_conf) eligible.insert("s" + std::to_string(s));
      for (int i = 0; i < n; ++i)
        segs.push_back(make_segment("s" + std::to_string(s), has_conf && i == 0 ? Label::Confirmation : Label::Other,
                                    i * 200));
    }
    const double fraction = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    const auto split = split_corpus(segs, fraction, rng());
    std::set<std::string> train, test;
    for (const auto& s : split.train) train.insert(s.speaker_id);
    for (const auto& s : split.test) test.insert(s.speaker_id);
    CHECK(!train.empty());
    CHECK(!test.empty());
    for (const auto& id : train) CHECK(!test.contains(id));
    std::set<std::string> both(train);
    both.insert(test.begin(), test.end());
    CHECK(both == eligible);
  }
}
