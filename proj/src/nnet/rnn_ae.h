// nnet/rnn_ae.h

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

#ifndef PHONELEARN_NNET_RNN_AE_H_
#define PHONELEARN_NNET_RNN_AE_H_

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "nnet/dense.h"
#include "nnet/dense_net.h"
#include "nnet/gru.h"
#include "nnet/optimizer.h"
#include "util/error.h"

namespace phonelearn {

// Sequence-to-sequence autoencoder: a stacked-GRU encoder projects its final
// hidden state to a fixed embedding; the decoder, fed the embedding as input
// at every step, emits the target frame sequence through a linear output
// projection.
template <typename S>
struct RnnAutoencoder {
  std::vector<GruLayer<S>> encoder;
  DenseLayer<S> embed;  // embed_dim x hidden, linear
  std::vector<GruLayer<S>> decoder;
  DenseLayer<S> out;  // input_dim x hidden, linear

  static RnnAutoencoder Create(Eigen::Index input_dim, uint64_t seed,
                               Eigen::Index hidden = 400, int n_layers = 3,
                               Eigen::Index embed_dim = 130) {
    Rng rng(DeriveSeed(seed, "rnn-init"));
    RnnAutoencoder net;
    Eigen::Index in = input_dim;
    for (int l = 0; l < n_layers; ++l) {
      net.encoder.emplace_back(in, hidden, &rng);
      in = hidden;
    }
    net.embed = DenseLayer<S>(hidden, embed_dim, Activation::kLinear, &rng);
    in = embed_dim;
    for (int l = 0; l < n_layers; ++l) {
      net.decoder.emplace_back(in, hidden, &rng);
      in = hidden;
    }
    net.out = DenseLayer<S>(hidden, input_dim, Activation::kLinear, &rng);
    return net;
  }

  Eigen::Index InputDim() const { return encoder.front().InputDim(); }
  Eigen::Index EmbedDim() const { return embed.OutputDim(); }

  void CollectParams(std::vector<ParamRef<S>>* params) {
    for (auto& layer : encoder) layer.CollectParams(params);
    embed.CollectParams(params);
    for (auto& layer : decoder) layer.CollectParams(params);
    out.CollectParams(params);
  }

  // Fixed-dimensional embedding of one sequence (D x T), any T >= 1.
  Vec<S> Embed(const Mat<S>& seq) const {
    const auto t_count = seq.cols();
    // Inference-only unroll; no training caches.
    std::vector<Mat<S>> state(encoder.size());
    for (auto& s : state) s = Mat<S>::Zero(encoder[0].HiddenDim(), 1);
    for (Eigen::Index t = 0; t < t_count; ++t) {
      Mat<S> x = seq.col(t);
      for (size_t l = 0; l < encoder.size(); ++l) {
        const auto& g = encoder[l];
        Mat<S> z = GruLayer<S>::Sigmoid(g.wz * x + g.uz * state[l] + g.bz);
        Mat<S> r = GruLayer<S>::Sigmoid(g.wr * x + g.ur * state[l] + g.br);
        Mat<S> rh = r.array() * state[l].array();
        Mat<S> n =
            (g.wn * x + g.un * rh + g.bn).array().tanh().matrix();
        state[l] =
            ((1 - z.array()) * state[l].array() + z.array() * n.array())
                .matrix();
        x = state[l];
      }
    }
    return embed.Apply(state.back());
  }
};

// Padded batch of sequences; step t holds the t-th frame of each item and a
// 0/1 mask row marking live positions.
template <typename S>
struct SeqBatch {
  std::vector<Mat<S>> inputs;
  std::vector<RowVec<S>> input_masks;
  std::vector<Mat<S>> targets;
  std::vector<RowVec<S>> target_masks;
};

namespace internal {

template <typename S>
SeqBatch<S> PadBatch(const std::vector<const Mat<S>*>& in_seqs,
                     const std::vector<const Mat<S>*>& out_seqs) {
  SeqBatch<S> batch;
  const auto b = static_cast<Eigen::Index>(in_seqs.size());
  const Eigen::Index dim = in_seqs[0]->rows();
  Eigen::Index t_in = 0, t_out = 0;
  for (auto* s : in_seqs) t_in = std::max(t_in, s->cols());
  for (auto* s : out_seqs) t_out = std::max(t_out, s->cols());
  batch.inputs.assign(t_in, Mat<S>::Zero(dim, b));
  batch.input_masks.assign(t_in, RowVec<S>::Zero(b));
  batch.targets.assign(t_out, Mat<S>::Zero(out_seqs[0]->rows(), b));
  batch.target_masks.assign(t_out, RowVec<S>::Zero(b));
  for (Eigen::Index c = 0; c < b; ++c) {
    for (Eigen::Index t = 0; t < in_seqs[c]->cols(); ++t) {
      batch.inputs[t].col(c) = in_seqs[c]->col(t);
      batch.input_masks[t][c] = 1;
    }
    for (Eigen::Index t = 0; t < out_seqs[c]->cols(); ++t) {
      batch.targets[t].col(c) = out_seqs[c]->col(t);
      batch.target_masks[t][c] = 1;
    }
  }
  return batch;
}

// Forward + backward over one padded batch; returns the masked MSE and
// leaves gradients accumulated in the layers.
template <typename S>
S RnnForwardBackward(RnnAutoencoder<S>* net, const SeqBatch<S>& batch) {
  const auto t_in = batch.inputs.size();
  const auto t_out = batch.targets.size();
  const auto b = batch.inputs[0].cols();

  // Encoder stack.
  std::vector<std::vector<Mat<S>>> enc_h(net->encoder.size());
  const std::vector<Mat<S>>* layer_in = &batch.inputs;
  for (size_t l = 0; l < net->encoder.size(); ++l) {
    enc_h[l] = net->encoder[l].Forward(*layer_in, batch.input_masks);
    layer_in = &enc_h[l];
  }
  const Mat<S>& enc_last = net->encoder.back().h_last;
  const Mat<S>& embedding = net->embed.Forward(enc_last);

  // Decoder stack conditioned on the embedding at every step.
  std::vector<Mat<S>> dec_in(t_out, embedding);
  std::vector<std::vector<Mat<S>>> dec_h(net->decoder.size());
  const std::vector<Mat<S>>* dec_layer_in = &dec_in;
  for (size_t l = 0; l < net->decoder.size(); ++l) {
    dec_h[l] = net->decoder[l].Forward(*dec_layer_in, batch.target_masks);
    dec_layer_in = &dec_h[l];
  }

  // Per-step linear output; masked MSE over valid frames.
  S total_valid = 0;
  for (const auto& m : batch.target_masks) total_valid += m.sum();
  const S denom = total_valid * static_cast<S>(batch.targets[0].rows());
  S loss = 0;
  std::vector<Mat<S>> dd_top(t_out);
  const auto& top = dec_h.back();
  for (size_t t = 0; t < t_out; ++t) {
    Mat<S> pred = net->out.weight * top[t];
    pred.colwise() += net->out.bias;
    Mat<S> diff = (pred - batch.targets[t]).array().rowwise() *
                  batch.target_masks[t].array();
    loss += diff.squaredNorm() / denom;
    Mat<S> dy = diff * (S(2) / denom);
    net->out.grad_weight.noalias() += dy * top[t].transpose();
    net->out.grad_bias.noalias() += dy.rowwise().sum();
    dd_top[t] = net->out.weight.transpose() * dy;
  }

  // Backward through the decoder stack.
  std::vector<Mat<S>>* grads = &dd_top;
  std::vector<Mat<S>> lower;
  for (size_t l = net->decoder.size(); l-- > 0;) {
    lower = net->decoder[l].Backward(*grads);
    grads = &lower;
  }
  Mat<S> d_embed = Mat<S>::Zero(net->EmbedDim(), b);
  for (const auto& g : lower) d_embed += g;

  // Embedding projection, then the encoder stack (loss reaches the encoder
  // only through the final hidden state).
  Mat<S> d_enc_last = net->embed.Backward(d_embed);
  std::vector<Mat<S>> d_enc(t_in);
  d_enc[t_in - 1] = d_enc_last;
  std::vector<Mat<S>>* enc_grads = &d_enc;
  std::vector<Mat<S>> enc_lower;
  for (size_t l = net->encoder.size(); l-- > 0;) {
    enc_lower = net->encoder[l].Backward(*enc_grads);
    enc_grads = &enc_lower;
  }
  for (auto& layer : net->encoder) layer.DropCaches();
  for (auto& layer : net->decoder) layer.DropCaches();
  return loss;
}

// Length-bucketed batches: sort by input length, cut into batches, shuffle
// the batch order each epoch.
template <typename S>
std::vector<TrainLogEntry> RnnTrainLoop(
    RnnAutoencoder<S>* net,
    const std::vector<std::pair<const Mat<S>*, const Mat<S>*>>& items,
    int epochs, const TrainSchedule& schedule, const std::string& context) {
  std::vector<ParamRef<S>> params;
  net->CollectParams(&params);
  auto optimizer = MakeOptimizer<S>(schedule);

  std::vector<size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return items[a].first->cols() < items[b].first->cols();
  });
  const size_t batch_size = std::max(1, schedule.batch_size);
  std::vector<std::vector<size_t>> batches;
  for (size_t i = 0; i < order.size(); i += batch_size) {
    batches.emplace_back(
        order.begin() + i,
        order.begin() + std::min(order.size(), i + batch_size));
  }

  Rng rng(DeriveSeed(schedule.seed, "rnn-shuffle"));
  std::vector<TrainLogEntry> log;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    rng.Shuffle(&batches);
    double epoch_loss = 0.0;
    size_t n_items = 0;
    for (const auto& batch_ids : batches) {
      std::vector<const Mat<S>*> in_seqs, out_seqs;
      for (size_t id : batch_ids) {
        in_seqs.push_back(items[id].first);
        out_seqs.push_back(items[id].second);
      }
      SeqBatch<S> batch = PadBatch<S>(in_seqs, out_seqs);
      const S loss = RnnForwardBackward(net, batch);
      if (!std::isfinite(static_cast<double>(loss))) {
        std::ostringstream ss;
        ss << context << ": loss is not finite at epoch " << epoch
           << " (optimizer="
           << (schedule.optimizer == OptimizerKind::kAdam ? "adam"
                                                          : "adadelta")
           << ", lr=" << schedule.adam_learning_rate
           << "); check the learning rate and initialization";
        throw NumericError(ss.str());
      }
      optimizer->Step(params);
      epoch_loss += static_cast<double>(loss) * batch_ids.size();
      n_items += batch_ids.size();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    log.push_back({epoch + 1, epoch_loss / std::max<size_t>(1, n_items),
                   seconds});
  }
  return log;
}

}  // namespace internal

// Unsupervised sequence autoencoding over word-sized chunks.
template <typename S>
RnnAutoencoder<S> RnnAeTrain(const std::vector<Mat<S>>& chunks /* D x T */,
                             const TrainSchedule& schedule,
                             std::vector<TrainLogEntry>* log = nullptr,
                             Eigen::Index hidden = 400, int n_layers = 3,
                             Eigen::Index embed_dim = 130) {
  if (chunks.empty()) throw DataError("RnnAeTrain: no chunks");
  for (const auto& c : chunks)
    if (c.cols() < 1) throw DataError("RnnAeTrain: empty chunk");
  RnnAutoencoder<S> net = RnnAutoencoder<S>::Create(
      chunks[0].rows(), schedule.seed, hidden, n_layers, embed_dim);
  std::vector<std::pair<const Mat<S>*, const Mat<S>*>> items;
  items.reserve(chunks.size());
  for (const auto& c : chunks) items.emplace_back(&c, &c);
  auto entries = internal::RnnTrainLoop(&net, items, schedule.epochs,
                                        schedule, "ae-rnn train");
  if (log) log->insert(log->end(), entries.begin(), entries.end());
  return net;
}

// Correspondence training: encode one instance of a word, decode toward the
// other instance's frames (target length = the partner's length). Both
// orientations of every pair are used.
template <typename S>
RnnAutoencoder<S> RnnCaeTrain(
    const RnnAutoencoder<S>& init,
    const std::vector<std::pair<Mat<S>, Mat<S>>>& pairs, int epochs,
    const TrainSchedule& schedule,
    std::vector<TrainLogEntry>* log = nullptr) {
  if (pairs.empty()) throw DataError("RnnCaeTrain: empty pair list");
  RnnAutoencoder<S> net = init;
  std::vector<std::pair<const Mat<S>*, const Mat<S>*>> items;
  items.reserve(2 * pairs.size());
  for (const auto& [a, b] : pairs) {
    items.emplace_back(&a, &b);
    items.emplace_back(&b, &a);
  }
  auto entries = internal::RnnTrainLoop(&net, items, epochs, schedule,
                                        "cae-rnn train");
  if (log) log->insert(log->end(), entries.begin(), entries.end());
  return net;
}

}  // namespace phonelearn

#endif  // PHONELEARN_NNET_RNN_AE_H_
