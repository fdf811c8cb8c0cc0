// dpgmm/model.h

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

#ifndef PHONELEARN_DPGMM_MODEL_H_
#define PHONELEARN_DPGMM_MODEL_H_

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dpgmm/niw.h"
#include "features/feature_seq.h"

namespace phonelearn {

// Final mixture exported after training: weights plus per-component
// Gaussians, immutable and safe for concurrent inference.
struct DpgmmModel {
  std::vector<double> weights;
  std::vector<GaussianParams> components;

  int NumComponents() const { return static_cast<int>(weights.size()); }
  int Dim() const {
    return components.empty() ? 0 : components.front().Dim();
  }
};

// Row t holds p(component | frame t), computed in log space and normalized
// per row; rows are strictly positive and sum to one.
struct Posteriorgram {
  Eigen::MatrixXd rows;  // T x K
};

Posteriorgram ComputePosteriorgram(const DpgmmModel& model,
                                   const Eigen::MatrixXd& frames /* T x D */);
Posteriorgram ComputePosteriorgram(const DpgmmModel& model,
                                   const FeatureSequence& seq);

// Binary model file ("PLDP"): K, D, weights, means, Cholesky factors.
// Metadata (hyperparameters, seed, iterations) goes to a JSON sidecar
// written by the trainer.
void SaveDpgmmModel(const std::filesystem::path& path,
                    const DpgmmModel& model);
DpgmmModel LoadDpgmmModel(const std::filesystem::path& path);

}  // namespace phonelearn

#endif  // PHONELEARN_DPGMM_MODEL_H_
