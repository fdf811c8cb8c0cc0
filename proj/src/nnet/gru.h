// nnet/gru.h

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

#ifndef PHONELEARN_NNET_GRU_H_
#define PHONELEARN_NNET_GRU_H_

#include <vector>

#include "nnet/common.h"

namespace phonelearn {

// Gated recurrent unit layer over padded batches (update/reset gates, Cho's
// formulation):
//   z_t = sigmoid(Wz x_t + Uz h_{t-1} + bz)
//   r_t = sigmoid(Wr x_t + Ur h_{t-1} + br)
//   n_t = tanh(Wn x_t + Un (r_t . h_{t-1}) + bn)
//   h_t = (1 - z_t) . h_{t-1} + z_t . n_t
// The per-step mask row holds 1 for live positions; finished sequences carry
// their state through unchanged, so the final step always exposes each
// item's last valid hidden state.
template <typename S>
struct GruLayer {
  Mat<S> wz, wr, wn;  // H x I
  Mat<S> uz, ur, un;  // H x H
  Vec<S> bz, br, bn;

  Mat<S> gwz, gwr, gwn, guz, gur, gun;
  Vec<S> gbz, gbr, gbn;

  struct StepCache {
    Mat<S> x, h_prev, z, r, n, rh;  // all  (I or H) x B
    RowVec<S> mask;                 // 1 x B
  };
  std::vector<StepCache> cache;
  Mat<S> h_last;  // H x B after Forward

  GruLayer() = default;
  GruLayer(Eigen::Index in, Eigen::Index hidden, Rng* rng) {
    auto init = [&](Mat<S>& m, Eigen::Index r_, Eigen::Index c_) {
      m.resize(r_, c_);
      GlorotInit(&m, rng);
    };
    init(wz, hidden, in);
    init(wr, hidden, in);
    init(wn, hidden, in);
    init(uz, hidden, hidden);
    init(ur, hidden, hidden);
    init(un, hidden, hidden);
    bz = Vec<S>::Zero(hidden);
    br = Vec<S>::Zero(hidden);
    bn = Vec<S>::Zero(hidden);
    ZeroGrads(hidden, in);
  }

  void ZeroGrads(Eigen::Index hidden, Eigen::Index in) {
    gwz = Mat<S>::Zero(hidden, in);
    gwr = Mat<S>::Zero(hidden, in);
    gwn = Mat<S>::Zero(hidden, in);
    guz = Mat<S>::Zero(hidden, hidden);
    gur = Mat<S>::Zero(hidden, hidden);
    gun = Mat<S>::Zero(hidden, hidden);
    gbz = Vec<S>::Zero(hidden);
    gbr = Vec<S>::Zero(hidden);
    gbn = Vec<S>::Zero(hidden);
  }

  Eigen::Index InputDim() const { return wz.cols(); }
  Eigen::Index HiddenDim() const { return wz.rows(); }

  static Mat<S> Sigmoid(const Mat<S>& x) {
    return ((-x.array()).exp() + 1).inverse().matrix();
  }

  // inputs[t]: I x B; masks[t]: 1 x B in {0,1}. Returns hidden states per
  // step (H x B). Initial state is zero.
  std::vector<Mat<S>> Forward(const std::vector<Mat<S>>& inputs,
                              const std::vector<RowVec<S>>& masks) {
    const auto t_count = inputs.size();
    const auto batch = inputs.empty() ? 0 : inputs[0].cols();
    const auto hidden = HiddenDim();
    cache.assign(t_count, {});
    std::vector<Mat<S>> outputs(t_count);
    Mat<S> h = Mat<S>::Zero(hidden, batch);
    for (size_t t = 0; t < t_count; ++t) {
      auto& c = cache[t];
      c.x = inputs[t];
      c.h_prev = h;
      c.mask = masks[t];
      Mat<S> z = wz * c.x + uz * h;
      z.colwise() += bz;
      c.z = Sigmoid(z);
      Mat<S> r = wr * c.x + ur * h;
      r.colwise() += br;
      c.r = Sigmoid(r);
      c.rh = c.r.array() * h.array();
      Mat<S> n = wn * c.x + un * c.rh;
      n.colwise() += bn;
      c.n = n.array().tanh().matrix();
      Mat<S> h_new =
          ((1 - c.z.array()) * h.array() + c.z.array() * c.n.array())
              .matrix();
      // Frozen (masked-out) items keep their previous state.
      h = h_new.array().rowwise() * c.mask.array() +
          h.array().rowwise() * (1 - c.mask.array());
      outputs[t] = h;
    }
    h_last = h;
    return outputs;
  }

  // grad_outputs[t] may be empty (no direct loss at that step). Returns
  // gradients w.r.t. the inputs.
  std::vector<Mat<S>> Backward(const std::vector<Mat<S>>& grad_outputs) {
    const auto t_count = cache.size();
    const auto hidden = HiddenDim();
    const auto batch = t_count == 0 ? 0 : cache[0].x.cols();
    std::vector<Mat<S>> grad_inputs(t_count);
    Mat<S> carry = Mat<S>::Zero(hidden, batch);
    for (size_t ti = t_count; ti-- > 0;) {
      const auto& c = cache[ti];
      Mat<S> gh = carry;
      if (grad_outputs[ti].size() != 0) gh += grad_outputs[ti];
      // Split into the live part (flows through the gates) and the frozen
      // part (passes straight to h_{t-1}).
      Mat<S> gh_live = gh.array().rowwise() * c.mask.array();
      Mat<S> gh_frozen = gh.array().rowwise() * (1 - c.mask.array());

      Mat<S> dn = (gh_live.array() * c.z.array() *
                   (1 - c.n.array().square()))
                      .matrix();  // pre-tanh
      Mat<S> dz = (gh_live.array() * (c.n.array() - c.h_prev.array()) *
                   c.z.array() * (1 - c.z.array()))
                      .matrix();  // pre-sigmoid
      Mat<S> drh = un.transpose() * dn;
      Mat<S> dr = (drh.array() * c.h_prev.array() * c.r.array() *
                   (1 - c.r.array()))
                      .matrix();  // pre-sigmoid

      gwz.noalias() += dz * c.x.transpose();
      gwr.noalias() += dr * c.x.transpose();
      gwn.noalias() += dn * c.x.transpose();
      guz.noalias() += dz * c.h_prev.transpose();
      gur.noalias() += dr * c.h_prev.transpose();
      gun.noalias() += dn * c.rh.transpose();
      gbz.noalias() += dz.rowwise().sum();
      gbr.noalias() += dr.rowwise().sum();
      gbn.noalias() += dn.rowwise().sum();

      grad_inputs[ti] = wz.transpose() * dz + wr.transpose() * dr +
                        wn.transpose() * dn;
      carry = (gh_live.array() * (1 - c.z.array()) +
               drh.array() * c.r.array())
                  .matrix() +
              uz.transpose() * dz + ur.transpose() * dr;
      carry += gh_frozen;
    }
    return grad_inputs;
  }

  void CollectParams(std::vector<ParamRef<S>>* out) {
    auto add_m = [out](Mat<S>& v, Mat<S>& g) {
      out->push_back({v.data(), g.data(), v.size()});
    };
    auto add_v = [out](Vec<S>& v, Vec<S>& g) {
      out->push_back({v.data(), g.data(), v.size()});
    };
    add_m(wz, gwz);
    add_m(wr, gwr);
    add_m(wn, gwn);
    add_m(uz, guz);
    add_m(ur, gur);
    add_m(un, gun);
    add_v(bz, gbz);
    add_v(br, gbr);
    add_v(bn, gbn);
  }

  void DropCaches() {
    cache.clear();
    cache.shrink_to_fit();
  }
};

}  // namespace phonelearn

#endif  // PHONELEARN_NNET_GRU_H_
