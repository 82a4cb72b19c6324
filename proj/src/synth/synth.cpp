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
#include <fstream>
#include <numbers>

#include "nlconf/error.hpp"
#include "nlconf/synth.hpp"

namespace nlconf::synth {
namespace {

constexpr double kFs = kSampleRate;
constexpr double kBandwidth1 = 80.0;   // Hz
constexpr double kBandwidth2 = 120.0;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t samples_for(double seconds) { return static_cast<std::size_t>(std::lround(seconds * kFs)); }

/// Two-pole resonator with per-sample centre frequency.
class Resonator {
 public:
  explicit Resonator(double bandwidth) : r_(std::exp(-std::numbers::pi * bandwidth / kFs)) {}

  double step(double x, double freq) {
    const double a1 = 2.0 * r_ * std::cos(2.0 * std::numbers::pi * freq / kFs);
    const double y = (1.0 - r_) * x + a1 * y1_ - r_ * r_ * y2_;
    y2_ = y1_;
    y1_ = y;
    return y;
  }

 private:
  double r_;
  double y1_ = 0.0, y2_ = 0.0;
};

/// Voiced source through the resonator cascade; tracks are per sample.
std::vector<double> render(const std::vector<double>& f0, const std::vector<double>& f1,
                           const std::vector<double>& f2, const std::vector<double>& envelope,
                           double breath, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Resonator r1(kBandwidth1), r2(kBandwidth2);
  std::vector<double> out(f0.size());
  double phase = uniform(rng, 0.0, 1.0);
  for (std::size_t n = 0; n < f0.size(); ++n) {
    phase += f0[n] / kFs;
    double x = 0.0;
    if (phase >= 1.0) {
      phase -= 1.0;
      x = 1.0;
    }
    x += breath * gauss(rng);
    out[n] = envelope[n] * r2.step(r1.step(x, f1[n]), f2[n]);
  }
  double peak = 0.0;
  for (double v : out) peak = std::max(peak, std::abs(v));
  if (peak > 0.0)
    for (double& v : out) v *= 0.5 / peak;
  return out;
}

std::vector<double> raised_cosine_envelope(std::size_t n, std::size_t ramp) {
  std::vector<double> env(n, 1.0);
  ramp = std::min(ramp, n / 2);
  for (std::size_t i = 0; i < ramp; ++i) {
    const double w = 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(ramp));
    env[i] = w;
    env[n - 1 - i] = w;
  }
  return env;
}

double glide(double a, double b, double t) { return a + (b - a) * t; }

/// Next target at least `min_step` away from `previous`, drawn from [lo, hi].
double next_target(double previous, double lo, double hi, double min_step, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double t = uniform(rng, lo, hi);
    if (std::abs(t - previous) >= min_step) return t;
  }
  return previous + min_step <= hi ? previous + min_step : previous - min_step;
}

}  // namespace

SpeakerProfile random_speaker(std::string id, std::mt19937_64& rng) {
  SpeakerProfile s;
  s.id = std::move(id);
  s.median_f0 = uniform(rng, 90.0, 230.0);
  s.confirmation_f1 = 350.0 * uniform(rng, 0.92, 1.08);
  s.confirmation_f2 = 1400.0 * uniform(rng, 0.92, 1.08);
  s.tract_scale = uniform(rng, 0.92, 1.08);
  return s;
}

std::vector<double> confirmation_token(const SpeakerProfile& speaker, std::mt19937_64& rng) {
  const std::size_t n = samples_for(uniform(rng, 0.3, 0.7));
  const double start = speaker.median_f0 * uniform(rng, 0.99, 1.01);
  const double drift = uniform(rng, -0.02, 0.005);  // flat, at most a slight fall
  // Token-to-token variation of the held formants.
  const double g1 = speaker.confirmation_f1 * uniform(rng, 0.96, 1.04);
  const double g2 = speaker.confirmation_f2 * uniform(rng, 0.96, 1.04);
  std::vector<double> f0(n), f1(n, g1), f2(n, g2);
  for (std::size_t i = 0; i < n; ++i) f0[i] = start * (1.0 + drift * static_cast<double>(i) / static_cast<double>(n));
  return render(f0, f1, f2, raised_cosine_envelope(n, samples_for(0.03)), 0.01, rng);
}

std::vector<double> other_token(const SpeakerProfile& speaker, std::mt19937_64& rng) {
  const std::size_t n = samples_for(uniform(rng, 0.5, 3.0));
  std::vector<double> f0(n), f1(n), f2(n), env(n);
  const double scale = speaker.tract_scale;

  double a1 = uniform(rng, 300.0, 850.0), a2 = uniform(rng, 900.0, 2400.0);
  double p0 = speaker.median_f0 * uniform(rng, 0.8, 1.3);
  std::size_t at = 0;
  bool even = true;
  while (at < n) {
    const std::size_t len = std::min(n - at, samples_for(uniform(rng, 0.10, 0.25)));
    const double b1 = next_target(a1, 300.0, 850.0, 200.0, rng);
    const double b2 = next_target(a2, 900.0, 2400.0, 400.0, rng);
    const double q0 = next_target(p0, speaker.median_f0 * 0.8, speaker.median_f0 * 1.3,
                                  speaker.median_f0 * 0.2, rng);
    const double dip = even ? uniform(rng, 0.3, 0.7) : 1.0;
    for (std::size_t i = 0; i < len; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(len);
      f1[at + i] = scale * glide(a1, b1, t);
      f2[at + i] = scale * glide(a2, b2, t);
      f0[at + i] = glide(p0, q0, t);
      env[at + i] = 1.0 - (1.0 - dip) * std::sin(std::numbers::pi * t);
    }
    a1 = b1;
    a2 = b2;
    p0 = q0;
    at += len;
    even = !even;
  }
  const auto ramp = raised_cosine_envelope(n, samples_for(0.03));
  for (std::size_t i = 0; i < n; ++i) env[i] *= ramp[i];
  return render(f0, f1, f2, env, 0.03, rng);
}

corpus::AudioSegment random_segment(const SpeakerProfile& speaker, Label label, std::mt19937_64& rng) {
  corpus::AudioSegment seg;
  seg.source_id = "synth-" + speaker.id;
  seg.speaker_id = speaker.id;
  seg.label = label;
  seg.samples = label == Label::Confirmation ? confirmation_token(speaker, rng) : other_token(speaker, rng);
  seg.end_ms = static_cast<std::int64_t>(seg.samples.size() * 1000 / kSampleRate);
  return seg;
}

SynthCorpus make_corpus(const SynthConfig& config) {
  if (config.speakers == 0 || config.segments_per_speaker == 0)
    fail(ErrorCode::ConfigError, "synthetic corpus needs speakers and segments");
  if (!(config.confirmation_rate > 0.0 && config.confirmation_rate < 1.0))
    fail(ErrorCode::ConfigError, "confirmation_rate must lie in (0, 1)");

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t gap = samples_for(config.gap_ms / 1000.0);
  constexpr std::size_t per_ms = kSampleRate / 1000;

  SynthCorpus out;
  for (std::size_t s = 0; s < config.speakers; ++s) {
    char id[16];
    std::snprintf(id, sizeof id, "spk%02zu", s + 1);
    const auto speaker = random_speaker(id, rng);

    const double expected = config.confirmation_rate * static_cast<double>(config.segments_per_speaker);
    const auto base = static_cast<long>(std::lround(expected));
    const long jitter = std::uniform_int_distribution<long>(-1, 1)(rng);
    const auto confirmations = static_cast<std::size_t>(
        std::clamp<long>(base + jitter, 1, static_cast<long>(config.segments_per_speaker)));
    std::vector<Label> labels(config.segments_per_speaker, Label::Other);
    std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(confirmations), Label::Confirmation);
    std::shuffle(labels.begin(), labels.end(), rng);

    SynthFile file;
    file.name = speaker.id + ".wav";
    auto& audio = file.audio.samples;
    audio.assign(gap, 0.0);
    for (Label label : labels) {
      const auto token = label == Label::Confirmation ? confirmation_token(speaker, rng) : other_token(speaker, rng);
      // Tokens start on a millisecond boundary so manifest rows are exact.
      audio.resize((audio.size() + per_ms - 1) / per_ms * per_ms, 0.0);
      corpus::SegmentDescriptor row;
      row.wav_path = file.name;
      row.speaker_id = speaker.id;
      row.label = label;
      row.start_ms = static_cast<std::int64_t>(audio.size() / per_ms);
      row.end_ms = row.start_ms + static_cast<std::int64_t>(token.size() / per_ms);
      audio.insert(audio.end(), token.begin(), token.end());
      audio.resize(audio.size() + gap, 0.0);
      out.rows.push_back(std::move(row));
    }
    for (double& v : audio) v += config.noise_level * gauss(rng);
    out.speakers.push_back(speaker);
    out.files.push_back(std::move(file));
  }
  return out;
}

std::filesystem::path write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& f : corpus.files) corpus::save_wav(dir / f.name, f.audio);
  const auto manifest = dir / "manifest.csv";
  std::ofstream out(manifest);
  if (!out) fail(ErrorCode::IoError, "cannot write " + manifest.string());
  corpus::write_manifest(out, corpus.rows);
  return manifest;
}

}  // namespace nlconf::synth
