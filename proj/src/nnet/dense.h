// nnet/dense.h

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

#ifndef PHONELEARN_NNET_DENSE_H_
#define PHONELEARN_NNET_DENSE_H_

#include "nnet/common.h"

namespace phonelearn {

template <typename S>
struct DenseLayer {
  Mat<S> weight;  // out x in
  Vec<S> bias;
  Activation activation = Activation::kTanh;

  Mat<S> grad_weight;
  Vec<S> grad_bias;

  // Cached for backward.
  Mat<S> input;   // in x B
  Mat<S> output;  // out x B, post-activation

  DenseLayer() = default;
  DenseLayer(Eigen::Index in, Eigen::Index out, Activation act, Rng* rng)
      : activation(act) {
    weight.resize(out, in);
    GlorotInit(&weight, rng);
    bias = Vec<S>::Zero(out);
    grad_weight = Mat<S>::Zero(out, in);
    grad_bias = Vec<S>::Zero(out);
  }

  Eigen::Index InputDim() const { return weight.cols(); }
  Eigen::Index OutputDim() const { return weight.rows(); }

  const Mat<S>& Forward(const Mat<S>& x) {
    input = x;
    output.noalias() = weight * x;
    output.colwise() += bias;
    if (activation == Activation::kTanh)
      output = output.array().tanh().matrix();
    return output;
  }

  // Inference-only pass; no caches touched.
  Mat<S> Apply(const Mat<S>& x) const {
    Mat<S> y = weight * x;
    y.colwise() += bias;
    if (activation == Activation::kTanh) y = y.array().tanh().matrix();
    return y;
  }

  // Consumes d(loss)/d(output), accumulates parameter gradients, returns
  // d(loss)/d(input).
  Mat<S> Backward(const Mat<S>& grad_output) {
    Mat<S> dz = grad_output;
    if (activation == Activation::kTanh)
      dz.array() *= (1 - output.array().square());
    grad_weight.noalias() += dz * input.transpose();
    grad_bias.noalias() += dz.rowwise().sum();
    return weight.transpose() * dz;
  }

  void CollectParams(std::vector<ParamRef<S>>* out) {
    out->push_back({weight.data(), grad_weight.data(), weight.size()});
    out->push_back({bias.data(), grad_bias.data(), bias.size()});
  }
};

}  // namespace phonelearn

#endif  // PHONELEARN_NNET_DENSE_H_
