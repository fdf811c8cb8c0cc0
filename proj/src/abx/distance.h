// abx/distance.h

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

#ifndef PHONELEARN_ABX_DISTANCE_H_
#define PHONELEARN_ABX_DISTANCE_H_

#include <utility>
#include <vector>

#include "abx/types.h"

namespace phonelearn {

// Probability floor applied before logs in the KL divergence.
inline constexpr double kKlEpsilon = 1e-10;

// Symmetrized KL: 0.5 * [KL(p||q) + KL(q||p)] with both vectors floored at
// kKlEpsilon (no renormalization). Angular cosine:
// arccos(clamped cosine similarity) / pi, in [0, 1]; zero vectors are an
// error under the angular metric.
double FrameDistance(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                     FrameMetric metric);

// DTW over steps {(1,0),(0,1),(1,1)} from (0,0) to (T1-1,T2-1) minimizing
// the *path-averaged* framewise cost (sum along the path divided by path
// length). The length-augmented DP is exact for this objective.
double DtwDistance(const Eigen::MatrixXd& s1, const Eigen::MatrixXd& s2,
                   FrameMetric metric);

struct DtwAlignment {
  double distance = 0.0;
  std::vector<std::pair<int, int>> path;  // monotone in both coordinates
};

DtwAlignment DtwAlign(const Eigen::MatrixXd& s1, const Eigen::MatrixXd& s2,
                      FrameMetric metric);

// Frame sequences go through DTW; embeddings through angular cosine.
// Mismatched kinds or metrics are an error.
double SegmentDistance(const Representation& r1, const Representation& r2);

}  // namespace phonelearn

#endif  // PHONELEARN_ABX_DISTANCE_H_
