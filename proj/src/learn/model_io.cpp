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

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "nlconf/error.hpp"
#include "nlconf/learn/model.hpp"

namespace nlconf::learn {
namespace {

static_assert(std::endian::native == std::endian::little, "model codec assumes a little-endian host");

constexpr char kMagic[4] = {'N', 'L', 'C', 'M'};

class Writer {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  void u32(std::uint32_t v) { bytes(&v, 4); }
  void u64(std::uint64_t v) { bytes(&v, 8); }
  void f64(double v) { bytes(&v, 8); }
  void vec(const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) f64(v[i]);
  }
  void mat(const Eigen::MatrixXd& m) {  // row-major
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) f64(m(r, c));
  }

  void section(const char (&tag)[5], const Writer& body) {
    bytes(tag, 4);
    u64(body.out_.size());
    bytes(body.out_.data(), body.out_.size());
  }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  bool done() const { return pos_ == data_.size(); }
  void need(std::size_t n) const {
    if (n > data_.size() - pos_) fail(ErrorCode::CorruptModel, "model file is truncated");
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32() {
    std::uint32_t v;
    std::memcpy(&v, take(4).data(), 4);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v;
    std::memcpy(&v, take(8).data(), 8);
    return v;
  }
  double f64() {
    double v;
    std::memcpy(&v, take(8).data(), 8);
    return v;
  }
  Eigen::Index count(std::size_t element_bytes) {
    const std::uint64_t n = u64();
    if (element_bytes != 0 && n > (data_.size() - pos_) / element_bytes)
      fail(ErrorCode::CorruptModel, "model file is truncated");
    return static_cast<Eigen::Index>(n);
  }
  Eigen::VectorXd vec(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = f64();
    return v;
  }
  Eigen::MatrixXd mat(Eigen::Index rows, Eigen::Index cols) {
    need(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) * 8);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = f64();
    return m;
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

bool tag_eq(std::span<const std::uint8_t> tag, const char (&want)[5]) {
  return std::memcmp(tag.data(), want, 4) == 0;
}

}  // namespace

Eigen::VectorXd ModelBundle::transform(std::span<const double> raw) const {
  const Eigen::Map<const Eigen::VectorXd> x(raw.data(), static_cast<Eigen::Index>(raw.size()));
  Eigen::VectorXd z = normalizer.apply(x);
  if (pca) z = pca->project(z);
  return z;
}

Eigen::MatrixXd ModelBundle::transform_rows(const Eigen::MatrixXd& raw_rows) const {
  Eigen::MatrixXd z = normalizer.apply_rows(raw_rows);
  if (pca) z = pca->project_rows(z);
  return z;
}

double ModelBundle::decision_value(std::span<const double> raw) const {
  if (raw.size() != feature_config.raw_dimension)
    fail(ErrorCode::DimensionMismatch, "expected " + std::to_string(feature_config.raw_dimension) +
                                           " raw features, got " + std::to_string(raw.size()));
  return svm.decision_value(transform(raw));
}

void ModelBundle::validate() const {
  const auto d = static_cast<Eigen::Index>(feature_config.raw_dimension);
  if (feature_config != featset::FeatureSetConfig::make(feature_config.kind))
    fail(ErrorCode::CorruptModel, "feature configuration does not match its kind");
  if (normalizer.mean.size() != d || normalizer.std.size() != d)
    fail(ErrorCode::CorruptModel, "normalizer width differs from feature dimension");
  if (pca.has_value() != featset::uses_pca(feature_config.kind))
    fail(ErrorCode::CorruptModel, "PCA presence does not match the feature set");
  Eigen::Index svm_in = d;
  if (pca) {
    if (pca->basis.cols() != d || pca->mean.size() != d || pca->eigenvalues.size() != pca->basis.rows())
      fail(ErrorCode::CorruptModel, "PCA dimensions are inconsistent");
    svm_in = pca->basis.rows();
  }
  if (svm.support_vectors.rows() > 0 && svm.support_vectors.cols() != svm_in)
    fail(ErrorCode::CorruptModel, "SVM width differs from the transformed feature width");
  if (svm.coefficients.size() != svm.support_vectors.rows())
    fail(ErrorCode::CorruptModel, "one SVM coefficient per support vector required");
}

std::vector<std::uint8_t> encode_model(const ModelBundle& b) {
  b.validate();
  Writer w;
  w.bytes(kMagic, 4);
  w.u32(b.format_version);

  Writer fset;
  fset.u32(static_cast<std::uint32_t>(b.feature_config.kind));
  fset.u32(static_cast<std::uint32_t>(b.feature_config.stack_depth));
  fset.u32(static_cast<std::uint32_t>(b.feature_config.raw_dimension));
  w.section("FSET", fset);

  Writer norm;
  norm.u64(static_cast<std::uint64_t>(b.normalizer.mean.size()));
  norm.vec(b.normalizer.mean);
  norm.vec(b.normalizer.std);
  w.section("NORM", norm);

  if (b.pca) {
    Writer pca;
    pca.f64(b.pca->epsilon);
    pca.f64(b.pca->total_variance);
    pca.u64(static_cast<std::uint64_t>(b.pca->basis.rows()));
    pca.u64(static_cast<std::uint64_t>(b.pca->basis.cols()));
    pca.vec(b.pca->mean);
    pca.mat(b.pca->basis);
    pca.vec(b.pca->eigenvalues);
    w.section("PCA_", pca);
  }

  Writer hyper;
  hyper.f64(b.params.C);
  hyper.f64(b.params.eps);
  hyper.f64(b.params.gamma);
  w.section("HYPR", hyper);

  Writer svm;
  svm.f64(b.svm.gamma);
  svm.f64(b.svm.bias);
  svm.u64(static_cast<std::uint64_t>(b.svm.support_vectors.rows()));
  svm.u64(static_cast<std::uint64_t>(b.svm.support_vectors.cols()));
  svm.vec(b.svm.coefficients);
  svm.mat(b.svm.support_vectors);
  w.section("SVM_", svm);

  w.section("END_", Writer{});
  return w.take();
}

ModelBundle decode_model(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    fail(ErrorCode::VersionMismatch, "not an NLCM model file");
  Reader r(bytes);
  r.take(4);
  ModelBundle b;
  b.format_version = r.u32();
  if (b.format_version != kModelFormatVersion)
    fail(ErrorCode::VersionMismatch, "unsupported model format version " + std::to_string(b.format_version));

  bool seen_fset = false, seen_norm = false, seen_hypr = false, seen_svm = false, seen_end = false;
  while (!seen_end) {
    const auto tag = r.take(4);
    const std::uint64_t length = r.u64();
    r.need(length);
    Reader body(r.take(length));

    if (tag_eq(tag, "FSET")) {
      const auto kind = body.u32();
      if (kind > static_cast<std::uint32_t>(featset::FeatureKind::StackedPitch))
        fail(ErrorCode::CorruptModel, "unknown feature kind");
      b.feature_config.kind = static_cast<featset::FeatureKind>(kind);
      b.feature_config.stack_depth = body.u32();
      b.feature_config.raw_dimension = body.u32();
      seen_fset = true;
    } else if (tag_eq(tag, "NORM")) {
      const auto d = body.count(16);
      b.normalizer.mean = body.vec(d);
      b.normalizer.std = body.vec(d);
      seen_norm = true;
    } else if (tag_eq(tag, "PCA_")) {
      PcaTransform pca;
      pca.epsilon = body.f64();
      pca.total_variance = body.f64();
      const auto k = body.count(0);
      const auto d = body.count(0);
      pca.mean = body.vec(d);
      pca.basis = body.mat(k, d);
      pca.eigenvalues = body.vec(k);
      b.pca = std::move(pca);
    } else if (tag_eq(tag, "HYPR")) {
      b.params.C = body.f64();
      b.params.eps = body.f64();
      b.params.gamma = body.f64();
      seen_hypr = true;
    } else if (tag_eq(tag, "SVM_")) {
      b.svm.gamma = body.f64();
      b.svm.bias = body.f64();
      const auto n = body.count(0);
      const auto d = body.count(0);
      b.svm.coefficients = body.vec(n);
      b.svm.support_vectors = body.mat(n, d);
      seen_svm = true;
    } else if (tag_eq(tag, "END_")) {
      seen_end = true;
    }
    // Unknown sections are skipped.
  }
  if (!seen_fset || !seen_norm || !seen_hypr || !seen_svm)
    fail(ErrorCode::CorruptModel, "model file is missing a required section");
  b.validate();
  return b;
}

void save_model(const ModelBundle& bundle, const std::filesystem::path& path) {
  const auto bytes = encode_model(bundle);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

ModelBundle load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_model(bytes);
}

namespace {

nlohmann::json to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

nlohmann::json to_json(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(to_json(Eigen::VectorXd(m.row(r).transpose())));
  return rows;
}

}  // namespace

std::string model_to_json(const ModelBundle& b) {
  nlohmann::json j;
  j["format"] = "NLCM";
  j["format_version"] = b.format_version;
  j["feature_config"] = {{"kind", std::string(featset::to_string(b.feature_config.kind))},
                         {"stack_depth", b.feature_config.stack_depth},
                         {"raw_dimension", b.feature_config.raw_dimension}};
  j["normalizer"] = {{"mean", to_json(b.normalizer.mean)}, {"std", to_json(b.normalizer.std)}};
  if (b.pca) {
    j["pca"] = {{"epsilon", b.pca->epsilon},
                {"total_variance", b.pca->total_variance},
                {"mean", to_json(b.pca->mean)},
                {"basis", to_json(b.pca->basis)},
                {"eigenvalues", to_json(b.pca->eigenvalues)}};
  } else {
    j["pca"] = nullptr;
  }
  j["hyperparams"] = {{"C", b.params.C}, {"eps", b.params.eps}, {"gamma", b.params.gamma}};
  j["svm"] = {{"gamma", b.svm.gamma},
              {"bias", b.svm.bias},
              {"coefficients", to_json(b.svm.coefficients)},
              {"support_vectors", to_json(b.svm.support_vectors)}};
  return j.dump(2);
}

}  // namespace nlconf::learn
