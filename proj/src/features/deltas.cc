// features/deltas.cc

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

#include "features/deltas.h"

#include <algorithm>

#include "util/error.h"

namespace phonelearn {

namespace {

constexpr int kWindow = 2;
// 2 * sum_{n=1..W} n^2
constexpr float kNorm = 10.0f;

Eigen::MatrixXf Regress(const Eigen::MatrixXf& x) {
  const Eigen::Index t_count = x.rows();
  Eigen::MatrixXf d(t_count, x.cols());
  for (Eigen::Index t = 0; t < t_count; ++t) {
    Eigen::RowVectorXf acc = Eigen::RowVectorXf::Zero(x.cols());
    for (int n = 1; n <= kWindow; ++n) {
      Eigen::Index hi = std::min(t + n, t_count - 1);
      Eigen::Index lo = std::max<Eigen::Index>(t - n, 0);
      acc += static_cast<float>(n) * (x.row(hi) - x.row(lo));
    }
    d.row(t) = acc / kNorm;
  }
  return d;
}

}  // namespace

FeatureSequence AddDeltas(const FeatureSequence& seq) {
  if (seq.NumFrames() < 1) throw DataError("AddDeltas: empty sequence");
  const Eigen::MatrixXf delta = Regress(seq.frames);
  const Eigen::MatrixXf delta2 = Regress(delta);
  FeatureSequence out;
  out.utterance = seq.utterance;
  out.frame_shift = seq.frame_shift;
  out.frame_length = seq.frame_length;
  out.frames.resize(seq.NumFrames(), 3 * seq.Dim());
  out.frames << seq.frames, delta, delta2;
  return out;
}

}  // namespace phonelearn
