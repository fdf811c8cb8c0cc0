// features/feature_seq.h

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

#ifndef PHONELEARN_FEATURES_FEATURE_SEQ_H_
#define PHONELEARN_FEATURES_FEATURE_SEQ_H_

#include <string>

#include <Eigen/Core>

namespace phonelearn {

// Per-utterance acoustic features. frames is time-major: row t is the
// feature vector of frame t, which covers
// [t * frame_shift, t * frame_shift + frame_length) seconds.
struct FeatureSequence {
  std::string utterance;
  double frame_shift = 0.010;
  double frame_length = 0.025;
  Eigen::MatrixXf frames;  // T x D

  Eigen::Index NumFrames() const { return frames.rows(); }
  Eigen::Index Dim() const { return frames.cols(); }

  // Frames whose span lies (center-wise) inside [start, end) seconds.
  // A segment shorter than one frame still yields the single frame whose
  // window contains it, so no aligned segment comes back empty.
  Eigen::MatrixXf Slice(double start, double end) const;
};

}  // namespace phonelearn

#endif  // PHONELEARN_FEATURES_FEATURE_SEQ_H_
