// nnet/common.h

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

#ifndef PHONELEARN_NNET_COMMON_H_
#define PHONELEARN_NNET_COMMON_H_

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "util/rng.h"

namespace phonelearn {

// Batches are stored feature-major: a batch of B vectors of dimension D is a
// D x B matrix (columns are batch items), which maps layer application onto
// single GEMMs.
template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using RowVec = Eigen::Matrix<S, 1, Eigen::Dynamic>;

enum class Activation { kTanh, kLinear };

enum class OptimizerKind { kAdadelta, kAdam };

struct TrainSchedule {
  OptimizerKind optimizer = OptimizerKind::kAdadelta;
  double adadelta_decay = 0.95;
  double adam_learning_rate = 0.001;
  int epochs = 5;
  int batch_size = 256;
  uint64_t seed = 0;
};

// A flat view of one parameter tensor and its gradient accumulator.
template <typename S>
struct ParamRef {
  S* value = nullptr;
  S* grad = nullptr;
  Eigen::Index size = 0;
};

// Uniform Glorot-style fan-based initialization.
template <typename S>
void GlorotInit(Mat<S>* w, Rng* rng) {
  const double limit = std::sqrt(6.0 / (w->rows() + w->cols()));
  for (Eigen::Index j = 0; j < w->cols(); ++j)
    for (Eigen::Index i = 0; i < w->rows(); ++i)
      (*w)(i, j) = static_cast<S>(rng->Uniform(-limit, limit));
}

}  // namespace phonelearn

#endif  // PHONELEARN_NNET_COMMON_H_
