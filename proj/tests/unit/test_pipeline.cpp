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
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "nlconf/corpus.hpp"
#include "nlconf/error.hpp"
#include "nlconf/pipeline.hpp"

using namespace nlconf;
using namespace nlconf::pipeline;
using featset::FeatureKind;

namespace {

std::vector<std::size_t> iota(std::size_t n, std::size_t first = 0) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = first + i;
  return v;
}

std::vector<double> scores_of(std::initializer_list<int> votes) {
  std::vector<double> s;
  for (int v : votes) s.push_back(v > 0 ? 0.7 : -0.7);
  return s;
}

void check_same(const SegmentDecision& a, const SegmentDecision& b) {
  CHECK(a.decided_label == b.decided_label);
  CHECK(a.trigger_frame == b.trigger_frame);
  CHECK(a.frame_indices == b.frame_indices);
  CHECK(a.frame_scores == b.frame_scores);
  CHECK(a.max_rolling_mean == b.max_rolling_mean);
}

}  // namespace

TEST_CASE("vote: window examples") {
  const auto idx = iota(5);
  const auto all = decide_segment("a", scores_of({1, 1, 1, 1, 1}), idx);
  CHECK(all.decided_label == Label::Confirmation);
  CHECK(all.trigger_frame == 4u);
  CHECK(decide_segment("b", scores_of({1, 1, 1, -1, -1}), idx).decided_label == Label::Confirmation);
  const auto two = decide_segment("c", scores_of({1, 1, -1, -1, -1}), idx);
  CHECK(two.decided_label == Label::Other);
  CHECK(!two.trigger_frame);
  CHECK(two.max_rolling_mean == doctest::Approx(-0.2));
  const auto none = decide_segment("d", scores_of({-1, -1, -1, -1, -1, -1, -1}), iota(7));
  CHECK(none.decided_label == Label::Other);
  CHECK(none.max_rolling_mean == doctest::Approx(-1.0));
  // Fewer than five votes never fill the window.
  CHECK(decide_segment("e", scores_of({1, 1, 1, 1}), iota(4)).decided_label == Label::Other);
  CHECK_THROWS_AS(decide_segment("f", scores_of({1, 1}), iota(3)), Error);
}

TEST_CASE("vote: alternating predictions latch once the window holds three positives") {
  OnlineState s;
  const int votes[] = {1, -1, 1, -1, 1};
  for (std::size_t i = 0; i < 4; ++i) CHECK(!s.cast(votes[i], i));
  CHECK(s.cast(votes[4], 4));
  CHECK(s.rolling_mean() == doctest::Approx(0.2));

  OnlineState t;
  const int starts_negative[] = {-1, 1, -1, 1, -1, 1};
  for (std::size_t i = 0; i < 5; ++i) CHECK(!t.cast(starts_negative[i], i));
  CHECK(t.rolling_mean() == doctest::Approx(-0.2));
  CHECK(t.cast(starts_negative[5], 5));
  CHECK(t.trigger_frame == 5u);
}

TEST_CASE("vote: the latch holds and reset clears it") {
  OnlineState s;
  for (std::size_t i = 0; i < 5; ++i) s.cast(1, i);
  REQUIRE(s.latched);
  for (std::size_t i = 5; i < 20; ++i) CHECK(!s.cast(-1, i));
  CHECK(s.latched);
  CHECK(s.trigger_frame == 4u);
  s.reset();
  CHECK(!s.latched);
  CHECK(s.votes_cast == 0);
  CHECK(!s.trigger_frame);
  OnlineState fresh;
  fresh.reset();
  CHECK(fresh.votes_cast == 0);
  CHECK(!fresh.latched);
  CHECK(fresh.rolling_mean() == OnlineState{}.rolling_mean());
}

TEST_CASE("vote: configurable threshold") {
  OnlineState strict(0.5);
  for (int v : {1, 1, 1, 1, -1}) strict.cast(v, 0);
  CHECK(strict.latched);  // 0.6 > 0.5
  OnlineState stricter(0.6);
  for (int v : {1, 1, 1, 1, -1}) stricter.cast(v, 0);
  CHECK(!stricter.latched);  // 0.6 is not strictly above 0.6
}

TEST_CASE("vote: latched decisions are final for random vote streams") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
    std::vector<double> s(n);
    for (auto& v : s) v = std::normal_distribution<double>(-0.2, 1.0)(rng);
    const auto idx = iota(n);
    const auto full = decide_segment("x", s, idx);
    for (std::size_t cut = 1; cut <= n; ++cut) {
      const auto prefix = decide_segment("x", std::span(s).first(cut), std::span(idx).first(cut));
      if (prefix.trigger_frame) CHECK(full.trigger_frame == prefix.trigger_frame);
    }
    if (full.trigger_frame) CHECK(*full.trigger_frame >= 4);
  }
}

TEST_CASE("pipeline: offline and online decisions agree") {
  const auto test = fixture::segments(2, 6, 99);
  for (auto kind : {FeatureKind::StackedFormants, FeatureKind::Mfcc, FeatureKind::MfccDelta}) {
    const auto bundle = fixture::bundle(kind);
    const auto offline = classify_offline(test, bundle);
    REQUIRE(offline.decisions.size() == test.size());

    OnlineDetector detector(bundle);
    for (std::size_t i = 0; i < test.size(); ++i) {
      detector.begin_segment(test[i].id(), test[i].start_ms);
      std::optional<TriggerEvent> fired;
      for (const auto& f : corpus::frame_stream(test[i]))
        if (auto e = detector.push_frame(f.samples)) fired = e;
      auto [decision, late] = detector.finish_segment();
      if (late) fired = late;
      check_same(decision, offline.decisions[i]);
      CHECK(fired.has_value() == decision.trigger_frame.has_value());
      if (fired) {
        CHECK(fired->frame_index == *decision.trigger_frame);
        CHECK(fired->trigger_time_ms == doctest::Approx(test[i].start_ms + 10.0 * fired->frame_index + 25.0));
      }
    }

    for (std::size_t chunk : {std::size_t{1}, std::size_t{160}, std::size_t{977}}) {
      const auto listened = listen_segments(test, bundle, {}, chunk);
      REQUIRE(listened.size() == test.size());
      for (std::size_t i = 0; i < test.size(); ++i) check_same(listened[i], offline.decisions[i]);
    }
  }
}

TEST_CASE("pipeline: offline frames are the per-vector decision values") {
  const auto test = fixture::segments(1, 3, 5);
  const auto bundle = fixture::bundle(FeatureKind::StackedFormants);
  const auto offline = classify_offline(test, bundle);
  const auto feats = featset::extract(test[0], bundle.feature_config);
  std::size_t k = 0;
  for (const auto& f : offline.frames) {
    if (f.segment_id != test[0].id()) continue;
    REQUIRE(k < feats.size());
    CHECK(f.frame_index == feats[k].frame_index);
    CHECK(f.decision_value == bundle.decision_value(feats[k].values));
    CHECK(f.prediction == (f.decision_value > 0 ? Label::Confirmation : Label::Other));
    ++k;
  }
  CHECK(k == feats.size());
  // Warm-up: no vote before the stacking context is full.
  CHECK(offline.decisions[0].frame_indices.front() == 14);

  std::ostringstream csv;
  write_offline_csv(csv, offline.frames);
  CHECK(csv.str().rfind("segment_id,frame_index,decision_value,prediction\n", 0) == 0);
}

TEST_CASE("pipeline: identical segments with a reset in between decide identically") {
  const auto test = fixture::segments(1, 2, 17);
  const auto bundle = fixture::bundle(FeatureKind::StackedMfcc);
  OnlineDetector detector(bundle);
  std::vector<SegmentDecision> out;
  for (int rep = 0; rep < 2; ++rep) {
    detector.begin_segment("same");
    for (const auto& f : corpus::frame_stream(test[0])) detector.push_frame(f.samples);
    out.push_back(detector.finish_segment().first);
    detector.reset_segment();
    CHECK(!detector.state().latched);
    CHECK(detector.state().votes_cast == 0);
  }
  check_same(out[0], out[1]);
}

TEST_CASE("pipeline: short segments are rejected offline") {
  corpus::AudioSegment seg;
  seg.samples.assign(400 + 160 * 5, 0.01);
  const auto bundle = fixture::bundle(FeatureKind::StackedFormants);
  const std::vector<corpus::AudioSegment> one = {seg};
  try {
    classify_offline(one, bundle);
    FAIL("expected SegmentTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SegmentTooShort);
  }
}

TEST_CASE("pipeline: stream listener matches VAD segmentation plus offline scoring") {
  const auto parts = fixture::segments(1, 5, 23);
  corpus::AudioBuffer audio;
  audio.samples.assign(3000, 0.0);
  for (const auto& p : parts) {
    audio.samples.insert(audio.samples.end(), p.samples.begin(), p.samples.end());
    audio.samples.resize(audio.samples.size() + 6000, 0.0);
  }
  for (auto kind : {FeatureKind::StackedFormants, FeatureKind::MfccDelta}) {
    const auto bundle = fixture::bundle(kind);
    auto segs = corpus::vad_segments(audio, {}, "stream");
    std::erase_if(segs, [&](const corpus::AudioSegment& s) {
      return corpus::frame_count(s.samples.size()) < featset::required_frames(bundle.feature_config);
    });
    const auto offline = classify_offline(segs, bundle);

    std::mt19937_64 rng(static_cast<std::uint64_t>(kind));
    StreamListener listener(bundle, "stream");
    std::size_t at = 0;
    while (at < audio.samples.size()) {
      const auto n =
          std::min<std::size_t>(audio.samples.size() - at, std::uniform_int_distribution<std::size_t>(1, 3000)(rng));
      listener.push(std::span<const double>(audio.samples).subspan(at, n));
      at += n;
    }
    listener.finish();
    REQUIRE(listener.decisions().size() == offline.decisions.size());
    std::size_t triggered = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto& d = listener.decisions()[i];
      CHECK(d.decided_label == offline.decisions[i].decided_label);
      CHECK(d.trigger_frame == offline.decisions[i].trigger_frame);
      CHECK(d.frame_scores == offline.decisions[i].frame_scores);
      CHECK(listener.spans()[i].begin == static_cast<std::size_t>(segs[i].start_ms) * 16);
      triggered += d.trigger_frame.has_value();
    }
    REQUIRE(listener.triggers().size() == triggered);
    for (const auto& t : listener.triggers()) {
      CHECK(t.trigger_time_ms == doctest::Approx(t.segment_start_ms + 10.0 * t.frame_index + 25.0));
      CHECK(t.rolling_mean > 0.0);
      const auto json = trigger_to_json(t);
      CHECK(json.find("\"trigger_time_ms\"") != std::string::npos);
      CHECK(json.find('\n') == std::string::npos);
    }
  }
}
