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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlconf/corpus.hpp"
#include "nlconf/featset.hpp"
#include "nlconf/learn/grid_search.hpp"
#include "nlconf/learn/svm.hpp"
#include "nlconf/synth.hpp"

namespace nlconf::app {

enum class Command { Extract, Train, GridSearch, Evaluate, Classify, Listen, SynthCorpus };

std::string_view to_string(Command command);
Command parse_command(std::string_view name);

struct RunConfig {
  std::vector<featset::FeatureKind> feature_sets = {featset::FeatureKind::StackedFormants};
  // Unset fields fall back to the per-feature-set defaults.
  std::optional<double> svm_C, svm_eps, svm_gamma;
  double pca_epsilon = 0.95;
  bool normalize = true;
  double majority_threshold = 0.0;
  corpus::VadConfig vad;
  std::uint64_t seed = 1;
  double train_fraction = 0.7;
  bool grid = true;          // evaluate: pick hyperparameters by grid search
  bool segment_roc = false;  // evaluate: also report the segment-level ROC
  learn::HyperGrid hyper_grid;
  std::size_t chunk = 1600;  // listen: samples per pushed block
  synth::SynthConfig synth;

  std::filesystem::path manifest;
  std::filesystem::path model;
  std::filesystem::path wav;
  std::filesystem::path out = "out";

  learn::SvmHyperParams params_for(featset::FeatureKind kind) const;
};

/// Applies one `key = value` setting. Throws ConfigError for unknown keys or
/// malformed values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Reads a key-value file: one `key = value` per line, `#` starts a comment.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

/// Every setting as key -> value text, in the form apply_setting accepts.
std::map<std::string, std::string> describe(const RunConfig& config);

/// Runs one command, writing artifacts under config.out and a human summary
/// to `log`. Throws nlconf::Error on failure.
void run(Command command, const RunConfig& config, std::ostream& log);

/// Process exit status for an exception escaping run(): 2 config, 3 data,
/// 4 numerical.
int exit_code_for(const std::exception& e);

}  // namespace nlconf::app
