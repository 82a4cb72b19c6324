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

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "nlconf/error.hpp"
#include "nlconf/featset.hpp"

namespace nlconf::featset {

void write_feature_dump(const std::filesystem::path& dir, const std::string& stem,
                        std::span<const FeatureVector> vectors, const FeatureSetConfig& config) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / (stem + ".csv"));
  if (!csv) fail(ErrorCode::IoError, "cannot write feature dump in " + dir.string());
  csv << std::setprecision(17) << "frame_index";
  for (std::size_t k = 0; k < config.raw_dimension; ++k) csv << ",x" << k;
  csv << '\n';
  for (const auto& v : vectors) {
    if (v.values.size() != config.raw_dimension) fail(ErrorCode::DimensionMismatch, "feature vector width");
    csv << v.frame_index;
    for (double x : v.values) csv << ',' << x;
    csv << '\n';
  }

  nlohmann::json meta = {{"kind", std::string(to_string(config.kind))},
                         {"stack_depth", config.stack_depth},
                         {"raw_dimension", config.raw_dimension},
                         {"rows", vectors.size()}};
  std::ofstream side(dir / (stem + ".json"));
  side << meta.dump(2) << '\n';
}

std::vector<FeatureVector> read_feature_dump(const std::filesystem::path& dir, const std::string& stem,
                                             FeatureSetConfig* config_out) {
  std::ifstream side(dir / (stem + ".json"));
  if (!side) fail(ErrorCode::IoError, "missing feature sidecar for " + stem);
  FeatureSetConfig config;
  try {
    const auto meta = nlohmann::json::parse(side);
    config = FeatureSetConfig::make(parse_feature_kind(meta.at("kind").get<std::string>()));
    if (meta.at("raw_dimension").get<std::size_t>() != config.raw_dimension ||
        meta.at("stack_depth").get<std::size_t>() != config.stack_depth)
      fail(ErrorCode::ParseError, "feature sidecar disagrees with the feature set layout");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("feature sidecar: ") + e.what());
  }

  std::ifstream csv(dir / (stem + ".csv"));
  if (!csv) fail(ErrorCode::IoError, "missing feature matrix for " + stem);
  std::string line;
  std::getline(csv, line);
  std::vector<FeatureVector> out;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    FeatureVector v;
    v.kind = config.kind;
    std::getline(row, cell, ',');
    v.frame_index = std::stoull(cell);
    while (std::getline(row, cell, ',')) v.values.push_back(std::stod(cell));
    if (v.values.size() != config.raw_dimension) fail(ErrorCode::ParseError, "feature row width mismatch");
    out.push_back(std::move(v));
  }
  if (config_out) *config_out = config;
  return out;
}

}  // namespace nlconf::featset
