// nnet/checkpoint.cc

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

#include "nnet/checkpoint.h"

#include <fstream>

#include "util/error.h"
#include "util/io.h"

namespace phonelearn {

namespace {

constexpr char kMagic[4] = {'P', 'L', 'N', 'N'};
constexpr uint32_t kVersion = 1;

template <typename S>
TensorEntry MatrixTensor(const std::string& name, const Mat<S>& m) {
  TensorEntry t;
  t.name = name;
  t.dims = {static_cast<uint32_t>(m.rows()), static_cast<uint32_t>(m.cols())};
  t.data.resize(m.size());
  size_t idx = 0;  // row-major
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      t.data[idx++] = static_cast<float>(m(r, c));
  return t;
}

template <typename S>
TensorEntry VectorTensor(const std::string& name, const Vec<S>& v) {
  TensorEntry t;
  t.name = name;
  t.dims = {static_cast<uint32_t>(v.size())};
  t.data.assign(v.data(), v.data() + v.size());
  return t;
}

Eigen::MatrixXf ToMatrix(const TensorEntry& t) {
  if (t.dims.size() != 2)
    throw DataError("tensor '" + t.name + "' is not a matrix");
  Eigen::MatrixXf m(t.dims[0], t.dims[1]);
  size_t idx = 0;
  for (uint32_t r = 0; r < t.dims[0]; ++r)
    for (uint32_t c = 0; c < t.dims[1]; ++c) m(r, c) = t.data[idx++];
  return m;
}

Eigen::VectorXf ToVector(const TensorEntry& t) {
  if (t.dims.size() != 1)
    throw DataError("tensor '" + t.name + "' is not a vector");
  return Eigen::Map<const Eigen::VectorXf>(t.data.data(), t.dims[0]);
}

class TensorMap {
 public:
  explicit TensorMap(std::vector<TensorEntry> tensors) {
    for (auto& t : tensors) map_.emplace(t.name, std::move(t));
  }
  const TensorEntry& Get(const std::string& name) const {
    auto it = map_.find(name);
    if (it == map_.end())
      throw DataError("checkpoint misses tensor '" + name + "'");
    return it->second;
  }
  bool Has(const std::string& name) const { return map_.count(name) != 0; }

 private:
  std::map<std::string, TensorEntry> map_;
};

void LoadGru(const TensorMap& map, const std::string& prefix,
             GruLayer<float>* layer) {
  layer->wz = ToMatrix(map.Get(prefix + ".wz"));
  layer->wr = ToMatrix(map.Get(prefix + ".wr"));
  layer->wn = ToMatrix(map.Get(prefix + ".wn"));
  layer->uz = ToMatrix(map.Get(prefix + ".uz"));
  layer->ur = ToMatrix(map.Get(prefix + ".ur"));
  layer->un = ToMatrix(map.Get(prefix + ".un"));
  layer->bz = ToVector(map.Get(prefix + ".bz"));
  layer->br = ToVector(map.Get(prefix + ".br"));
  layer->bn = ToVector(map.Get(prefix + ".bn"));
  layer->ZeroGrads(layer->wz.rows(), layer->wz.cols());
}

void SaveGru(const GruLayer<float>& layer, const std::string& prefix,
             std::vector<TensorEntry>* out) {
  out->push_back(MatrixTensor(prefix + ".wz", layer.wz));
  out->push_back(MatrixTensor(prefix + ".wr", layer.wr));
  out->push_back(MatrixTensor(prefix + ".wn", layer.wn));
  out->push_back(MatrixTensor(prefix + ".uz", layer.uz));
  out->push_back(MatrixTensor(prefix + ".ur", layer.ur));
  out->push_back(MatrixTensor(prefix + ".un", layer.un));
  out->push_back(VectorTensor(prefix + ".bz", layer.bz));
  out->push_back(VectorTensor(prefix + ".br", layer.br));
  out->push_back(VectorTensor(prefix + ".bn", layer.bn));
}

DenseLayer<float> DenseFromTensors(const TensorMap& map,
                                   const std::string& prefix,
                                   Activation act) {
  DenseLayer<float> layer;
  layer.weight = ToMatrix(map.Get(prefix + ".weight"));
  layer.bias = ToVector(map.Get(prefix + ".bias"));
  layer.activation = act;
  layer.grad_weight =
      Eigen::MatrixXf::Zero(layer.weight.rows(), layer.weight.cols());
  layer.grad_bias = Eigen::VectorXf::Zero(layer.bias.size());
  return layer;
}

}  // namespace

void WriteTensorContainer(const std::filesystem::path& path,
                          const std::string& model_type,
                          const std::vector<TensorEntry>& tensors) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write checkpoint: " + path.string());
  out.write(kMagic, 4);
  WriteU32(out, kVersion);
  WriteString(out, model_type);
  WriteU32(out, static_cast<uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    WriteString(out, t.name);
    WriteU32(out, static_cast<uint32_t>(t.dims.size()));
    for (uint32_t d : t.dims) WriteU32(out, d);
    WriteF32Array(out, t.data.data(), t.data.size());
  }
  if (!out) throw DataError("short checkpoint write: " + path.string());
}

std::pair<std::string, std::vector<TensorEntry>> ReadTensorContainer(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != std::string(kMagic, 4))
    throw DataError("not a checkpoint file: " + path.string());
  if (ReadU32(in) != kVersion)
    throw DataError("unsupported checkpoint version: " + path.string());
  std::string model_type = ReadString(in);
  const uint32_t count = ReadU32(in);
  std::vector<TensorEntry> tensors(count);
  for (auto& t : tensors) {
    t.name = ReadString(in);
    const uint32_t n_dims = ReadU32(in);
    t.dims.resize(n_dims);
    size_t total = 1;
    for (auto& d : t.dims) {
      d = ReadU32(in);
      total *= d;
    }
    t.data.resize(total);
    ReadF32Array(in, t.data.data(), total);
  }
  return {std::move(model_type), std::move(tensors)};
}

std::string PeekModelType(const std::filesystem::path& path) {
  return ReadTensorContainer(path).first;
}

void SaveDenseNet(const std::filesystem::path& path,
                  const DenseNet<float>& net) {
  std::vector<TensorEntry> tensors;
  for (size_t l = 0; l < net.layers.size(); ++l) {
    const std::string prefix = "layer" + std::to_string(l);
    tensors.push_back(MatrixTensor(prefix + ".weight", net.layers[l].weight));
    tensors.push_back(VectorTensor(prefix + ".bias", net.layers[l].bias));
  }
  WriteTensorContainer(path, "dense-ae", tensors);
}

DenseNet<float> LoadDenseNet(const std::filesystem::path& path) {
  auto [type, tensors] = ReadTensorContainer(path);
  if (type != "dense-ae")
    throw DataError(path.string() + ": expected a dense-ae checkpoint, got " +
                    type);
  TensorMap map(std::move(tensors));
  DenseNet<float> net;
  for (size_t l = 0;; ++l) {
    const std::string prefix = "layer" + std::to_string(l);
    if (!map.Has(prefix + ".weight")) break;
    net.layers.push_back(
        DenseFromTensors(map, prefix, Activation::kTanh));
  }
  if (net.layers.empty())
    throw DataError(path.string() + ": checkpoint holds no layers");
  net.layers.back().activation = Activation::kLinear;
  return net;
}

void SaveRnnAutoencoder(const std::filesystem::path& path,
                        const RnnAutoencoder<float>& net) {
  std::vector<TensorEntry> tensors;
  for (size_t l = 0; l < net.encoder.size(); ++l)
    SaveGru(net.encoder[l], "encoder" + std::to_string(l), &tensors);
  tensors.push_back(MatrixTensor("embed.weight", net.embed.weight));
  tensors.push_back(VectorTensor("embed.bias", net.embed.bias));
  for (size_t l = 0; l < net.decoder.size(); ++l)
    SaveGru(net.decoder[l], "decoder" + std::to_string(l), &tensors);
  tensors.push_back(MatrixTensor("out.weight", net.out.weight));
  tensors.push_back(VectorTensor("out.bias", net.out.bias));
  WriteTensorContainer(path, "rnn-ae", tensors);
}

RnnAutoencoder<float> LoadRnnAutoencoder(const std::filesystem::path& path) {
  auto [type, tensors] = ReadTensorContainer(path);
  if (type != "rnn-ae")
    throw DataError(path.string() + ": expected an rnn-ae checkpoint, got " +
                    type);
  TensorMap map(std::move(tensors));
  RnnAutoencoder<float> net;
  for (size_t l = 0;; ++l) {
    const std::string prefix = "encoder" + std::to_string(l);
    if (!map.Has(prefix + ".wz")) break;
    GruLayer<float> layer;
    LoadGru(map, prefix, &layer);
    net.encoder.push_back(std::move(layer));
  }
  for (size_t l = 0;; ++l) {
    const std::string prefix = "decoder" + std::to_string(l);
    if (!map.Has(prefix + ".wz")) break;
    GruLayer<float> layer;
    LoadGru(map, prefix, &layer);
    net.decoder.push_back(std::move(layer));
  }
  if (net.encoder.empty() || net.decoder.empty())
    throw DataError(path.string() + ": checkpoint holds no recurrent layers");
  net.embed = DenseFromTensors(map, "embed", Activation::kLinear);
  net.out = DenseFromTensors(map, "out", Activation::kLinear);
  return net;
}

}  // namespace phonelearn
