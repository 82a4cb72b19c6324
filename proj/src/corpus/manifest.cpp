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
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "nlconf/corpus.hpp"
#include "nlconf/error.hpp"

namespace nlconf {

std::string_view to_string(Label label) {
  return label == Label::Confirmation ? "confirmation" : "other";
}

}  // namespace nlconf

namespace nlconf::corpus {
namespace {

constexpr std::string_view kHeader = "wav_path,speaker_id,start_ms,end_ms,label";
constexpr std::int64_t kSamplesPerMs = kSampleRate / 1000;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

[[noreturn]] void row_error(std::size_t line, const std::string& what) {
  fail(ErrorCode::ParseError, "manifest line " + std::to_string(line) + ": " + what);
}

std::int64_t parse_ms(std::string_view field, std::size_t line, const char* name) {
  std::int64_t value = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    row_error(line, std::string("invalid ") + name + " '" + std::string(field) + "'");
  return value;
}

}  // namespace

std::string AudioSegment::id() const {
  return source_id + ":" + std::to_string(start_ms) + "-" + std::to_string(end_ms);
}

std::vector<SegmentDescriptor> read_manifest(std::istream& in) {
  std::vector<SegmentDescriptor> rows;
  std::string raw;
  std::size_t line = 0;
  bool saw_header = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = trim(raw);
    if (line == 1 && text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    if (text.empty()) continue;
    if (!saw_header) {
      if (lower(text) != kHeader) row_error(line, "expected header '" + std::string(kHeader) + "'");
      saw_header = true;
      continue;
    }

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      fields.push_back(trim(text.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 5)
      row_error(line, "expected 5 fields, got " + std::to_string(fields.size()));

    SegmentDescriptor row;
    row.wav_path = std::string(fields[0]);
    row.speaker_id = std::string(fields[1]);
    if (row.wav_path.empty()) row_error(line, "empty wav_path");
    if (row.speaker_id.empty()) row_error(line, "empty speaker_id");
    row.start_ms = parse_ms(fields[2], line, "start_ms");
    row.end_ms = parse_ms(fields[3], line, "end_ms");
    if (row.start_ms < 0) row_error(line, "negative start_ms");
    if (row.end_ms <= row.start_ms) row_error(line, "end_ms must exceed start_ms");
    if ((row.end_ms - row.start_ms) * kSamplesPerMs < static_cast<std::int64_t>(kFrameLength))
      row_error(line, "segment shorter than one 25 ms frame");

    const std::string label = lower(fields[4]);
    if (label == "confirmation") {
      row.label = Label::Confirmation;
    } else if (label == "other") {
      row.label = Label::Other;
    } else {
      row_error(line, "unknown label '" + std::string(fields[4]) + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_manifest(std::ostream& out, std::span<const SegmentDescriptor> rows) {
  out << kHeader << '\n';
  for (const auto& r : rows) {
    out << r.wav_path << ',' << r.speaker_id << ',' << r.start_ms << ',' << r.end_ms
        << ',' << to_string(r.label) << '\n';
  }
}

std::vector<SegmentDescriptor> parse_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open manifest " + path.string());
  auto rows = read_manifest(in);

  const auto base = path.parent_path();
  std::map<std::string, std::size_t> lengths;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    auto it = lengths.find(row.wav_path);
    if (it == lengths.end()) {
      const auto audio = load_wav(base / row.wav_path);
      it = lengths.emplace(row.wav_path, audio.samples.size()).first;
    }
    if (row.end_ms * kSamplesPerMs > static_cast<std::int64_t>(it->second)) {
      fail(ErrorCode::RangeError,
           "manifest row " + std::to_string(i + 1) + ": end_ms " + std::to_string(row.end_ms) +
               " exceeds audio length of " + row.wav_path);
    }
  }
  return rows;
}

std::vector<AudioSegment> load_segments(std::span<const SegmentDescriptor> rows,
                                        const std::filesystem::path& base_dir) {
  std::map<std::string, AudioBuffer> cache;
  std::vector<AudioSegment> segments;
  segments.reserve(rows.size());
  for (const auto& row : rows) {
    auto it = cache.find(row.wav_path);
    if (it == cache.end()) it = cache.emplace(row.wav_path, load_wav(base_dir / row.wav_path)).first;
    const auto& audio = it->second.samples;
    const auto begin = static_cast<std::size_t>(row.start_ms * kSamplesPerMs);
    const auto end = static_cast<std::size_t>(row.end_ms * kSamplesPerMs);
    if (end > audio.size())
      fail(ErrorCode::RangeError, "segment " + row.wav_path + " [" + std::to_string(row.start_ms) +
                                      ", " + std::to_string(row.end_ms) + ") exceeds audio length");
    AudioSegment seg;
    seg.source_id = row.wav_path;
    seg.speaker_id = row.speaker_id;
    seg.start_ms = row.start_ms;
    seg.end_ms = row.end_ms;
    seg.label = row.label;
    seg.samples.assign(audio.begin() + static_cast<std::ptrdiff_t>(begin),
                       audio.begin() + static_cast<std::ptrdiff_t>(end));
    segments.push_back(std::move(seg));
  }
  return segments;
}

}  // namespace nlconf::corpus
