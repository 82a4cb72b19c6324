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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nlconf/app.hpp"
#include "nlconf/corpus.hpp"
#include "nlconf/error.hpp"
#include "nlconf/learn/model.hpp"

using namespace nlconf;
using namespace nlconf::app;
using featset::FeatureKind;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an nlconf::Error");
  return ErrorCode::InvalidArgument;
}

std::vector<std::string> lines_of(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("nlconf-test-app-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config: defaults") {
  const RunConfig c;
  CHECK(c.pca_epsilon == 0.95);
  CHECK(c.majority_threshold == 0.0);
  CHECK(c.hyper_grid.points().size() == 16);
  CHECK(c.params_for(FeatureKind::StackedFormants) == learn::SvmHyperParams{1.0, 0.5, 0.05});
  CHECK(c.feature_sets == std::vector<FeatureKind>{FeatureKind::StackedFormants});
}

TEST_CASE("config: settings, overrides and errors") {
  RunConfig c;
  apply_setting(c, "feature_set", "stacked-mfcc, pitch");
  CHECK(c.feature_sets == std::vector<FeatureKind>{FeatureKind::StackedMfcc, FeatureKind::Pitch});
  apply_setting(c, "feature_set", "all");
  CHECK(c.feature_sets.size() == 7);
  apply_setting(c, "C", "5");
  CHECK(c.params_for(FeatureKind::StackedFormants).C == 5.0);
  CHECK(c.params_for(FeatureKind::StackedFormants).gamma == 0.05);
  apply_setting(c, "grid_eps", "0.1,0.2");
  CHECK(c.hyper_grid.points().size() == 8);
  apply_setting(c, "grid", "false");
  CHECK(!c.grid);
  apply_setting(c, "seed", "42");
  CHECK(c.seed == 42);

  CHECK(code_of([&] { apply_setting(c, "colour", "blue"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { apply_setting(c, "seed", "many"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { apply_setting(c, "pca_epsilon", "1.5"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { apply_setting(c, "feature_set", "spectrogram"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { apply_setting(c, "train_fraction", "1.5"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { parse_command("dance"); }) == ErrorCode::ConfigError);
  CHECK(parse_command("grid-search") == Command::GridSearch);
  CHECK(to_string(Command::SynthCorpus) == "synth-corpus");
}

TEST_CASE("config: file format and describe round trip") {
  const auto dir = fresh_dir("config");
  {
    std::ofstream f(dir / "run.conf");
    f << "# experiment\nfeature_set = stacked-formants\n\nC = 5  # stronger\nvad_hangover_ms=300\n";
  }
  const auto kv = read_config_file(dir / "run.conf");
  REQUIRE(kv.size() == 3);
  CHECK(kv[1] == std::pair<std::string, std::string>{"C", "5"});
  RunConfig c;
  for (const auto& [k, v] : kv) apply_setting(c, k, v);
  CHECK(c.vad.hangover_ms == 300.0);

  RunConfig copy;
  for (const auto& [k, v] : describe(c)) apply_setting(copy, k, v);
  CHECK(describe(copy) == describe(c));

  {
    std::ofstream f(dir / "bad.conf");
    f << "just words\n";
  }
  CHECK(code_of([&] { read_config_file(dir / "bad.conf"); }) == ErrorCode::ConfigError);
}

TEST_CASE("config: exit codes by category") {
  CHECK(exit_code_for(Error(ErrorCode::ConfigError, "x")) == 2);
  CHECK(exit_code_for(Error(ErrorCode::InvalidArgument, "x")) == 2);
  CHECK(exit_code_for(Error(ErrorCode::CorruptFile, "x")) == 3);
  CHECK(exit_code_for(Error(ErrorCode::SegmentTooShort, "x")) == 3);
  CHECK(exit_code_for(Error(ErrorCode::ConvergenceFailure, "x")) == 4);
  CHECK(exit_code_for(Error(ErrorCode::DegenerateFrame, "x")) == 4);
  CHECK(exit_code_for(std::runtime_error("x")) == 1);
}

TEST_CASE("commands: synth-corpus, train, grid-search, classify and listen") {
  const auto dir = fresh_dir("flow");
  std::ostringstream log;
  RunConfig c;
  c.out = dir / "corpus";
  c.synth.speakers = 3;
  c.synth.segments_per_speaker = 8;
  c.seed = 5;
  run(Command::SynthCorpus, c, log);
  const auto manifest = c.out / "manifest.csv";
  const auto rows = corpus::parse_manifest(manifest);
  CHECK(rows.size() == 24);
  CHECK(corpus::load_segments(rows, c.out).size() == 24);
  CHECK(fs::exists(c.out / "run.json"));

  c.manifest = manifest;
  c.out = dir / "train";
  run(Command::Train, c, log);
  const auto model_path = c.out / "stacked-formants.nlcm";
  REQUIRE(fs::exists(model_path));
  const auto bundle = learn::load_model(model_path);
  CHECK(bundle.params == learn::SvmHyperParams{1.0, 0.5, 0.05});
  CHECK(!bundle.pca.has_value());

  std::ifstream meta_in(c.out / "run.json");
  const auto meta = nlohmann::json::parse(meta_in);
  CHECK(meta["command"] == "train");
  CHECK(meta["seed"] == 5);
  CHECK(meta["timings_seconds"].contains("total"));
  CHECK(meta["config"]["feature_set"] == "stacked-formants");

  c.out = dir / "grid";
  c.train_fraction = 1.0;
  run(Command::GridSearch, c, log);
  CHECK(lines_of(c.out / "grid-stacked-formants.csv").size() == 17);

  c.model = model_path;
  c.out = dir / "classify";
  run(Command::Classify, c, log);
  c.out = dir / "listen";
  c.chunk = 731;
  run(Command::Listen, c, log);
  const auto offline = lines_of(dir / "classify" / "segments.csv");
  const auto online = lines_of(dir / "listen" / "segments.ndjson");
  REQUIRE(offline.size() == online.size() + 1);
  for (std::size_t i = 0; i < online.size(); ++i) {
    const auto j = nlohmann::json::parse(online[i]);
    std::stringstream row(offline[i + 1]);
    std::string id, label, decided, trigger;
    std::getline(row, id, ',');
    std::getline(row, label, ',');
    std::getline(row, decided, ',');
    std::getline(row, trigger, ',');
    CHECK(j["segment_id"] == id);
    CHECK(j["decided_label"] == decided);
    CHECK((j["trigger_frame"].is_null() ? std::string() : std::to_string(j["trigger_frame"].get<int>())) == trigger);
  }
  const auto frames = lines_of(dir / "classify" / "frames.csv");
  CHECK(frames.size() > 1);
}

TEST_CASE("commands: missing inputs are data or config errors") {
  const auto dir = fresh_dir("errors");
  std::ostringstream log;
  RunConfig c;
  c.out = dir;
  CHECK(exit_code_for(Error(code_of([&] { run(Command::Train, c, log); }), "")) == 2);
  c.manifest = dir / "missing.csv";
  CHECK(exit_code_for(Error(code_of([&] { run(Command::Train, c, log); }), "")) == 3);
}
