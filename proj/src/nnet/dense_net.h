// nnet/dense_net.h

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

#ifndef PHONELEARN_NNET_DENSE_NET_H_
#define PHONELEARN_NNET_DENSE_NET_H_

#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <vector>

#include "nnet/dense.h"
#include "nnet/optimizer.h"
#include "util/error.h"

namespace phonelearn {

struct TrainLogEntry {
  int epoch = 0;
  double loss = 0.0;
  double seconds = 0.0;
};

// Feedforward reconstruction network: tanh hidden layers plus a linear
// output layer. The frame encoding is read from the last hidden layer.
template <typename S>
struct DenseNet {
  std::vector<DenseLayer<S>> layers;

  // The architecture used by the frame-level autoencoders: input -> 7 x 100
  // tanh -> 39 tanh -> linear output back to the input dimension.
  static DenseNet Autoencoder(Eigen::Index input_dim, uint64_t seed,
                              Eigen::Index wide = 100, int n_wide = 7,
                              Eigen::Index bottleneck = 39) {
    Rng rng(DeriveSeed(seed, "dense-init"));
    DenseNet net;
    Eigen::Index in = input_dim;
    for (int i = 0; i < n_wide; ++i) {
      net.layers.emplace_back(in, wide, Activation::kTanh, &rng);
      in = wide;
    }
    net.layers.emplace_back(in, bottleneck, Activation::kTanh, &rng);
    net.layers.emplace_back(bottleneck, input_dim, Activation::kLinear, &rng);
    return net;
  }

  Eigen::Index InputDim() const { return layers.front().InputDim(); }

  // Through every hidden layer (the encoding); excludes the output layer.
  Mat<S> Encode(const Mat<S>& x) const {
    Mat<S> h = x;
    for (size_t i = 0; i + 1 < layers.size(); ++i) h = layers[i].Apply(h);
    return h;
  }

  Mat<S> Reconstruct(const Mat<S>& x) const {
    Mat<S> h = x;
    for (const auto& layer : layers) h = layer.Apply(h);
    return h;
  }

  void CollectParams(std::vector<ParamRef<S>>* out) {
    for (auto& layer : layers) layer.CollectParams(out);
  }
};

namespace internal {

// Mean-squared-error over all elements; writes d(loss)/d(prediction).
template <typename S>
S MseLoss(const Mat<S>& prediction, const Mat<S>& target, Mat<S>* grad) {
  const S denom = static_cast<S>(prediction.size());
  *grad = (prediction - target) * (S(2) / denom);
  return (prediction - target).squaredNorm() / denom;
}

// Minibatch SGD over a pointer-assembled stack of dense layers.
template <typename S>
std::vector<TrainLogEntry> TrainDenseStack(
    const std::vector<DenseLayer<S>*>& stack, const Mat<S>& x,
    const Mat<S>& y, int epochs, const TrainSchedule& schedule,
    uint64_t shuffle_seed, const std::string& context) {
  std::vector<ParamRef<S>> params;
  for (auto* layer : stack) layer->CollectParams(&params);
  auto optimizer = MakeOptimizer<S>(schedule);

  const Eigen::Index n = x.cols();
  const Eigen::Index batch_size = std::max(1, schedule.batch_size);
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
  Rng rng(shuffle_seed);

  std::vector<TrainLogEntry> log;
  Mat<S> bx, by, grad;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    rng.Shuffle(&order);
    double epoch_loss = 0.0;
    Eigen::Index n_batches = 0;
    for (Eigen::Index b0 = 0; b0 < n; b0 += batch_size) {
      const Eigen::Index nb = std::min(batch_size, n - b0);
      bx.resize(x.rows(), nb);
      by.resize(y.rows(), nb);
      for (Eigen::Index c = 0; c < nb; ++c) {
        bx.col(c) = x.col(order[b0 + c]);
        by.col(c) = y.col(order[b0 + c]);
      }
      const Mat<S>* h = &bx;
      for (auto* layer : stack) h = &layer->Forward(*h);
      const S loss = MseLoss(*h, by, &grad);
      if (!std::isfinite(static_cast<double>(loss))) {
        std::ostringstream ss;
        ss << context << ": loss is not finite at epoch " << epoch
           << ", batch " << n_batches << " (optimizer="
           << (schedule.optimizer == OptimizerKind::kAdadelta ? "adadelta"
                                                              : "adam")
           << ", decay=" << schedule.adadelta_decay
           << ", lr=" << schedule.adam_learning_rate
           << "); check the learning rate and initialization";
        throw NumericError(ss.str());
      }
      Mat<S> g = grad;
      for (size_t i = stack.size(); i-- > 0;) g = stack[i]->Backward(g);
      optimizer->Step(params);
      epoch_loss += static_cast<double>(loss);
      ++n_batches;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    log.push_back({epoch + 1, epoch_loss / std::max<Eigen::Index>(1, n_batches),
                   seconds});
  }
  return log;
}

}  // namespace internal

// Greedy layerwise pretraining (each hidden layer learns to reconstruct its
// input through a temporary linear decoder for schedule.epochs epochs,
// earlier layers frozen), then schedule.epochs epochs of end-to-end
// fine-tuning of the full reconstruction. No early stopping.
template <typename S>
DenseNet<S> AeTrain(const Mat<S>& frames /* D x N */,
                    const TrainSchedule& schedule,
                    std::vector<TrainLogEntry>* log = nullptr) {
  if (frames.cols() == 0) throw DataError("AeTrain: no frames");
  DenseNet<S> net = DenseNet<S>::Autoencoder(frames.rows(), schedule.seed);
  Rng init_rng(DeriveSeed(schedule.seed, "ae-decoders"));

  Mat<S> input = frames;
  for (size_t l = 0; l + 1 < net.layers.size(); ++l) {
    DenseLayer<S> temp_decoder(net.layers[l].OutputDim(),
                               net.layers[l].InputDim(), Activation::kLinear,
                               &init_rng);
    auto entries = internal::TrainDenseStack<S>(
        {&net.layers[l], &temp_decoder}, input, input, schedule.epochs,
        schedule, DeriveSeed(schedule.seed, "ae-pretrain-" + std::to_string(l)),
        "ae pretrain layer " + std::to_string(l));
    if (log) log->insert(log->end(), entries.begin(), entries.end());
    if (l + 2 < net.layers.size()) input = net.layers[l].Apply(input);
  }

  std::vector<DenseLayer<S>*> full;
  for (auto& layer : net.layers) full.push_back(&layer);
  auto entries = internal::TrainDenseStack<S>(
      full, frames, frames, schedule.epochs, schedule,
      DeriveSeed(schedule.seed, "ae-finetune"), "ae finetune");
  if (log) log->insert(log->end(), entries.begin(), entries.end());
  return net;
}

// Correspondence training: starting from the autoencoder, reconstruct each
// frame of one word instance from its DTW-aligned partner. Both directions
// of every pair are used.
template <typename S>
DenseNet<S> CaeTrain(const DenseNet<S>& init, const Mat<S>& x,
                     const Mat<S>& y, int epochs,
                     const TrainSchedule& schedule,
                     std::vector<TrainLogEntry>* log = nullptr) {
  if (x.cols() == 0) throw DataError("CaeTrain: empty pair list");
  if (x.cols() != y.cols() || x.rows() != y.rows())
    throw DataError("CaeTrain: pair sides disagree in shape");
  if (init.layers.empty() || init.InputDim() != x.rows())
    throw DataError("CaeTrain: initializer topology does not match data");
  DenseNet<S> net = init;

  Mat<S> both_x(x.rows(), 2 * x.cols());
  Mat<S> both_y(y.rows(), 2 * y.cols());
  both_x << x, y;
  both_y << y, x;

  std::vector<DenseLayer<S>*> full;
  for (auto& layer : net.layers) full.push_back(&layer);
  auto entries = internal::TrainDenseStack<S>(
      full, both_x, both_y, epochs, schedule,
      DeriveSeed(schedule.seed, "cae-train"), "cae train");
  if (log) log->insert(log->end(), entries.begin(), entries.end());
  return net;
}

void WriteNnetTrainLogCsv(const std::filesystem::path& path,
                          const std::vector<TrainLogEntry>& log);

}  // namespace phonelearn

#endif  // PHONELEARN_NNET_DENSE_NET_H_
