// nnet/checkpoint.h

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

#ifndef PHONELEARN_NNET_CHECKPOINT_H_
#define PHONELEARN_NNET_CHECKPOINT_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nnet/dense_net.h"
#include "nnet/rnn_ae.h"

namespace phonelearn {

// Binary tensor container ("PLNN"): model type string, tensor count, then
// per tensor (name, u32 n_dims, u32 dims..., row-major f32 data). Training
// metadata goes to a JSON sidecar written by the trainer.
struct TensorEntry {
  std::string name;
  std::vector<uint32_t> dims;
  std::vector<float> data;  // row-major
};

void WriteTensorContainer(const std::filesystem::path& path,
                          const std::string& model_type,
                          const std::vector<TensorEntry>& tensors);
std::pair<std::string, std::vector<TensorEntry>> ReadTensorContainer(
    const std::filesystem::path& path);

void SaveDenseNet(const std::filesystem::path& path,
                  const DenseNet<float>& net);
DenseNet<float> LoadDenseNet(const std::filesystem::path& path);

void SaveRnnAutoencoder(const std::filesystem::path& path,
                        const RnnAutoencoder<float>& net);
RnnAutoencoder<float> LoadRnnAutoencoder(const std::filesystem::path& path);

// "dense-ae" or "rnn-ae" without loading the tensors.
std::string PeekModelType(const std::filesystem::path& path);

}  // namespace phonelearn

#endif  // PHONELEARN_NNET_CHECKPOINT_H_
