// features/feature_seq.cc

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

#include "features/feature_seq.h"

#include <algorithm>
#include <cmath>

namespace phonelearn {

Eigen::MatrixXf FeatureSequence::Slice(double start, double end) const {
  const Eigen::Index t_count = NumFrames();
  // Frame t's center is at t*shift + length/2.
  auto center = [this](Eigen::Index t) {
    return t * frame_shift + 0.5 * frame_length;
  };
  Eigen::Index first = t_count, last = -1;
  for (Eigen::Index t = 0; t < t_count; ++t) {
    double c = center(t);
    if (c >= start && c < end) {
      first = std::min(first, t);
      last = std::max(last, t);
    }
  }
  if (last < first) {
    // Very short segment: take the frame whose center is nearest.
    double mid = 0.5 * (start + end);
    Eigen::Index best = 0;
    double best_d = std::abs(center(0) - mid);
    for (Eigen::Index t = 1; t < t_count; ++t) {
      double d = std::abs(center(t) - mid);
      if (d < best_d) {
        best_d = d;
        best = t;
      }
    }
    first = last = best;
  }
  return frames.middleRows(first, last - first + 1);
}

}  // namespace phonelearn
