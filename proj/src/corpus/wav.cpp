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
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "nlconf/corpus.hpp"
#include "nlconf/error.hpp"

namespace nlconf::corpus {
namespace {

static_assert(std::endian::native == std::endian::little,
              "WAV codec assumes a little-endian host");

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) |
         (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at,
            const char (&tag)[5]) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_tag(std::vector<std::uint8_t>& out, const char (&tag)[5]) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

AudioBuffer decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) fail(ErrorCode::CorruptFile, "file shorter than RIFF header");
  if (!tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE"))
    fail(ErrorCode::UnsupportedFormat, "not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body)
      fail(ErrorCode::CorruptFile, "chunk extends past end of file");

    if (tag_is(bytes, pos, "fmt ")) {
      if (size < 16) fail(ErrorCode::CorruptFile, "fmt chunk too small");
      format = read_u16(bytes, body);
      channels = read_u16(bytes, body + 2);
      rate = read_u32(bytes, body + 4);
      bits = read_u16(bytes, body + 14);
      // WAVE_FORMAT_EXTENSIBLE: the sub-format GUID starts with the tag.
      if (format == 0xFFFE && size >= 26) format = read_u16(bytes, body + 24);
      have_fmt = true;
    } else if (tag_is(bytes, pos, "data")) {
      if (!have_fmt) fail(ErrorCode::CorruptFile, "data chunk before fmt chunk");
      if (format != 1 || bits != 16)
        fail(ErrorCode::UnsupportedFormat, "only PCM 16-bit is supported");
      if (channels != 1)
        fail(ErrorCode::UnsupportedFormat,
             "expected mono, got " + std::to_string(channels) + " channels");
      if (rate != static_cast<std::uint32_t>(kSampleRate))
        fail(ErrorCode::UnsupportedFormat,
             "expected 16000 Hz, got " + std::to_string(rate) + " Hz");
      if (size % 2 != 0) fail(ErrorCode::CorruptFile, "odd PCM16 data size");

      AudioBuffer audio;
      audio.sample_rate = static_cast<int>(rate);
      audio.samples.resize(size / 2);
      for (std::size_t i = 0; i < audio.samples.size(); ++i) {
        const auto v = static_cast<std::int16_t>(read_u16(bytes, body + 2 * i));
        audio.samples[i] = static_cast<double>(v) / 32768.0;
      }
      return audio;
    }
    pos = body + size + (size & 1u);
  }
  fail(ErrorCode::CorruptFile, have_fmt ? "missing data chunk" : "missing fmt chunk");
}

AudioBuffer load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes);
  } catch (const Error& e) {
    // Strip the "<code>: " prefix so it is not repeated.
    const std::string what = e.what();
    throw Error(e.code(), path.string() + ": " + what.substr(to_string(e.code()).size() + 2));
  }
}

std::vector<std::uint8_t> encode_wav(const AudioBuffer& audio) {
  if (audio.sample_rate != kSampleRate)
    fail(ErrorCode::UnsupportedFormat, "only 16 kHz audio can be written");
  const auto data_bytes = static_cast<std::uint32_t>(audio.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, 1);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(kSampleRate));
  put_u32(out, static_cast<std::uint32_t>(kSampleRate * 2));
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double s : audio.samples) {
    const double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32768.0);
    const auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    put_u16(out, static_cast<std::uint16_t>(v));
  }
  return out;
}

void save_wav(const std::filesystem::path& path, const AudioBuffer& audio) {
  const auto bytes = encode_wav(audio);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace nlconf::corpus
