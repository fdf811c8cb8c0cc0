// dpgmm/model.cc

// Copyright 2026  Phonelearn Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "dpgmm/model.h"

#include <cmath>
#include <fstream>
#include <numbers>

#include "util/error.h"
#include "util/io.h"

namespace phonelearn {

Posteriorgram ComputePosteriorgram(const DpgmmModel& model,
                                   const Eigen::MatrixXd& frames) {
  const int k_count = model.NumComponents();
  if (k_count < 1) throw DataError("posteriorgram: model has no components");
  if (frames.cols() != model.Dim())
    throw DataError("posteriorgram: feature dimension " +
                    std::to_string(frames.cols()) + " != model dimension " +
                    std::to_string(model.Dim()));
  const Eigen::Index t_count = frames.rows();
  const int dim = model.Dim();
  const double log_norm = -0.5 * dim * std::log(2.0 * std::numbers::pi);

  Eigen::MatrixXd logp(t_count, k_count);
  const Eigen::MatrixXd x = frames.transpose();  // D x T
  for (int k = 0; k < k_count; ++k) {
    const auto& g = model.components[k];
    Eigen::MatrixXd centered = x.colwise() - g.mean;
    g.chol.triangularView<Eigen::Lower>().solveInPlace(centered);
    logp.col(k) =
        (-0.5 * centered.colwise().squaredNorm().transpose().array() +
         (std::log(model.weights[k]) + log_norm - 0.5 * g.log_det))
            .matrix();
  }
  // Stable row softmax; the max term guarantees a nonzero entry per row.
  Posteriorgram pg;
  pg.rows.resize(t_count, k_count);
  for (Eigen::Index t = 0; t < t_count; ++t) {
    const double m = logp.row(t).maxCoeff();
    Eigen::ArrayXd e = (logp.row(t).array() - m).exp();
    pg.rows.row(t) = (e / e.sum()).matrix();
  }
  return pg;
}

Posteriorgram ComputePosteriorgram(const DpgmmModel& model,
                                   const FeatureSequence& seq) {
  return ComputePosteriorgram(model, seq.frames.cast<double>());
}

namespace {
constexpr char kMagic[4] = {'P', 'L', 'D', 'P'};
constexpr uint32_t kVersion = 1;
}  // namespace

void SaveDpgmmModel(const std::filesystem::path& path,
                    const DpgmmModel& model) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write model: " + path.string());
  out.write(kMagic, 4);
  WriteU32(out, kVersion);
  WriteU32(out, static_cast<uint32_t>(model.NumComponents()));
  WriteU32(out, static_cast<uint32_t>(model.Dim()));
  for (double w : model.weights) WriteF64(out, w);
  for (const auto& g : model.components)
    WriteF64Array(out, g.mean.data(), g.mean.size());
  for (const auto& g : model.components)
    WriteF64Array(out, g.chol.data(), g.chol.size());
  if (!out) throw DataError("short model write: " + path.string());
}

DpgmmModel LoadDpgmmModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != std::string(kMagic, 4))
    throw DataError("not a dpgmm model file: " + path.string());
  if (ReadU32(in) != kVersion)
    throw DataError("unsupported model version: " + path.string());
  const uint32_t k_count = ReadU32(in);
  const uint32_t dim = ReadU32(in);
  DpgmmModel model;
  model.weights.resize(k_count);
  for (auto& w : model.weights) w = ReadF64(in);
  model.components.resize(k_count);
  for (auto& g : model.components) {
    g.mean.resize(dim);
    ReadF64Array(in, g.mean.data(), dim);
  }
  for (auto& g : model.components) {
    g.chol.resize(dim, dim);
    ReadF64Array(in, g.chol.data(), static_cast<size_t>(dim) * dim);
    g.log_det = 2.0 * g.chol.diagonal().array().log().sum();
  }
  return model;
}

}  // namespace phonelearn
