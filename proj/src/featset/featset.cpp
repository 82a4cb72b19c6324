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
#include <numeric>

#include "nlconf/dsp/formants.hpp"
#include "nlconf/dsp/mfcc.hpp"
#include "nlconf/dsp/pitch.hpp"
#include "nlconf/dsp/savgol.hpp"
#include "nlconf/error.hpp"
#include "nlconf/featset.hpp"

namespace nlconf::featset {
namespace {

enum class Family { Mfcc, Formant, Pitch };

Family family_of(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::Mfcc:
    case FeatureKind::MfccDelta:
    case FeatureKind::StackedMfcc:
      return Family::Mfcc;
    case FeatureKind::FormantSd:
    case FeatureKind::StackedFormants:
      return Family::Formant;
    case FeatureKind::Pitch:
    case FeatureKind::StackedPitch:
      return Family::Pitch;
  }
  return Family::Mfcc;
}

double population_sd(const std::deque<std::vector<double>>& rows, std::size_t column) {
  double mean = 0.0;
  for (const auto& r : rows) mean += r[column];
  mean /= static_cast<double>(rows.size());
  double var = 0.0;
  for (const auto& r : rows) var += (r[column] - mean) * (r[column] - mean);
  return std::sqrt(var / static_cast<double>(rows.size()));
}

// Savitzky-Golay output at one position with edge replication; matches
// dsp::savitzky_golay applied to the whole column.
double filter_at(const std::vector<std::vector<double>>& history, std::size_t coef, std::size_t j,
                 const dsp::SavitzkyGolayFilter& filter) {
  const auto half = static_cast<std::ptrdiff_t>(filter.half_width());
  const auto last = static_cast<std::ptrdiff_t>(history.size()) - 1;
  double acc = 0.0;
  for (std::ptrdiff_t i = -half; i <= half; ++i) {
    const auto idx = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(j) + i, 0, last);
    acc += filter.coefficients[static_cast<std::size_t>(i + half)] * history[static_cast<std::size_t>(idx)][coef];
  }
  return acc / filter.normalization;
}

}  // namespace

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::Mfcc: return "mfcc";
    case FeatureKind::MfccDelta: return "mfcc-delta";
    case FeatureKind::StackedMfcc: return "stacked-mfcc";
    case FeatureKind::FormantSd: return "formant-sd";
    case FeatureKind::StackedFormants: return "stacked-formants";
    case FeatureKind::Pitch: return "pitch";
    case FeatureKind::StackedPitch: return "stacked-pitch";
  }
  return "unknown";
}

FeatureKind parse_feature_kind(std::string_view name) {
  for (auto kind : kAllKinds)
    if (to_string(kind) == name) return kind;
  fail(ErrorCode::ConfigError, "unknown feature set '" + std::string(name) + "'");
}

FeatureSetConfig FeatureSetConfig::make(FeatureKind kind) {
  FeatureSetConfig c;
  c.kind = kind;
  c.stack_depth = kStackDepth;
  switch (kind) {
    case FeatureKind::Mfcc: c.raw_dimension = 13; break;
    case FeatureKind::MfccDelta: c.raw_dimension = 39; break;
    case FeatureKind::StackedMfcc: c.raw_dimension = 195; break;
    case FeatureKind::FormantSd: c.raw_dimension = 2; break;
    case FeatureKind::StackedFormants: c.raw_dimension = 30; break;
    case FeatureKind::Pitch: c.raw_dimension = 1; break;
    case FeatureKind::StackedPitch: c.raw_dimension = 15; break;
  }
  return c;
}

std::size_t dimension(const FeatureSetConfig& config) { return config.raw_dimension; }

dsp::WindowKind window_kind_for(const FeatureSetConfig& config) {
  return family_of(config.kind) == Family::Mfcc ? dsp::WindowKind::BlackmanHarris4 : dsp::WindowKind::Hann;
}

std::size_t required_frames(const FeatureSetConfig& config) {
  switch (config.kind) {
    case FeatureKind::Mfcc:
    case FeatureKind::Pitch:
      return 1;
    case FeatureKind::MfccDelta:
      return dsp::SavitzkyGolayFilter::first_derivative().length();
    default:
      return config.stack_depth;
  }
}

bool uses_pca(FeatureKind kind) {
  return kind == FeatureKind::MfccDelta || kind == FeatureKind::StackedMfcc || kind == FeatureKind::StackedPitch;
}

void StackBuffer::push(std::vector<double> base) {
  ring_.push_back(std::move(base));
  while (ring_.size() > depth_) ring_.pop_front();
}

std::vector<double> StackBuffer::concatenated() const {
  std::vector<double> out;
  for (const auto& v : ring_) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<double> base_features(std::span<const double> frame, FeatureKind kind) {
  switch (family_of(kind)) {
    case Family::Mfcc:
      return dsp::mfcc(dsp::apply_window(frame, dsp::frame_window(dsp::WindowKind::BlackmanHarris4)));
    case Family::Formant: {
      const auto f = dsp::estimate_formants(dsp::apply_window(frame, dsp::frame_window(dsp::WindowKind::Hann)),
                                            kSampleRate);
      return {f.f1, f.f2};
    }
    case Family::Pitch:
      return {dsp::pitch_yin_fft(dsp::apply_window(frame, dsp::frame_window(dsp::WindowKind::Hann)))};
  }
  return {};
}

FeatureStream::FeatureStream(FeatureSetConfig config) : config_(config), stack_(config.stack_depth) {
  if (config_ != FeatureSetConfig::make(config_.kind))
    fail(ErrorCode::ConfigError, "feature set configuration does not match the " +
                                     std::string(to_string(config_.kind)) + " layout");
}

std::vector<FeatureVector> FeatureStream::push(std::span<const double> frame) {
  const std::size_t t = frames_seen_++;
  auto base = base_features(frame, config_.kind);
  std::vector<FeatureVector> out;

  switch (config_.kind) {
    case FeatureKind::Mfcc:
    case FeatureKind::Pitch:
      out.push_back({std::move(base), t, config_.kind});
      break;
    case FeatureKind::MfccDelta: {
      mfcc_history_.push_back(std::move(base));
      const std::size_t need = required_frames(config_);
      if (mfcc_history_.size() >= need) out = drain_delta(t - need / 2);
      break;
    }
    case FeatureKind::FormantSd:
      stack_.push(std::move(base));
      if (stack_.full())
        out.push_back({{population_sd(stack_.entries(), 0), population_sd(stack_.entries(), 1)}, t, config_.kind});
      break;
    default:
      stack_.push(std::move(base));
      if (stack_.full()) out.push_back({stack_.concatenated(), t, config_.kind});
      break;
  }
  return out;
}

FeatureVector FeatureStream::delta_vector(std::size_t j) const {
  static const auto d1 = dsp::SavitzkyGolayFilter::first_derivative();
  static const auto d2 = dsp::SavitzkyGolayFilter::second_derivative();
  const auto& c = mfcc_history_[j];
  FeatureVector v;
  v.frame_index = j;
  v.kind = config_.kind;
  v.values.reserve(3 * c.size());
  v.values.insert(v.values.end(), c.begin(), c.end());
  for (std::size_t k = 0; k < c.size(); ++k) v.values.push_back(filter_at(mfcc_history_, k, j, d1));
  for (std::size_t k = 0; k < c.size(); ++k) v.values.push_back(filter_at(mfcc_history_, k, j, d2));
  return v;
}

std::vector<FeatureVector> FeatureStream::drain_delta(std::size_t up_to_inclusive) {
  std::vector<FeatureVector> out;
  for (; next_delta_ <= up_to_inclusive && next_delta_ < mfcc_history_.size(); ++next_delta_)
    out.push_back(delta_vector(next_delta_));
  return out;
}

std::vector<FeatureVector> FeatureStream::finish() {
  if (config_.kind != FeatureKind::MfccDelta || mfcc_history_.size() < required_frames(config_)) return {};
  return drain_delta(mfcc_history_.size() - 1);
}

void FeatureStream::reset() {
  stack_.clear();
  mfcc_history_.clear();
  next_delta_ = 0;
  frames_seen_ = 0;
}

std::vector<FeatureVector> extract(std::span<const corpus::Frame> frames, const FeatureSetConfig& config) {
  const std::size_t need = required_frames(config);
  if (frames.size() < need)
    fail(ErrorCode::SegmentTooShort, std::string(to_string(config.kind)) + " needs " + std::to_string(need) +
                                         " frames, got " + std::to_string(frames.size()));
  FeatureStream stream(config);
  std::vector<FeatureVector> out;
  out.reserve(frames.size());
  for (const auto& f : frames) {
    auto v = stream.push(f.samples);
    std::move(v.begin(), v.end(), std::back_inserter(out));
  }
  auto tail = stream.finish();
  std::move(tail.begin(), tail.end(), std::back_inserter(out));
  return out;
}

std::vector<FeatureVector> extract(const corpus::AudioSegment& segment, const FeatureSetConfig& config) {
  return extract(corpus::frame_stream(segment), config);
}

}  // namespace nlconf::featset
