// abx/types.h

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

#ifndef PHONELEARN_ABX_TYPES_H_
#define PHONELEARN_ABX_TYPES_H_

#include <string>
#include <vector>

#include <Eigen/Core>

namespace phonelearn {

enum class FrameMetric { kSymmetrizedKl, kAngularCosine };

std::string FrameMetricName(FrameMetric metric);

// What a model hands the ABX task for one phone segment: either a frame
// sequence (posteriorgram rows or encoder outputs) compared with DTW, or a
// single fixed-length embedding compared directly. The metric tag travels
// with the data.
struct Representation {
  enum class Kind { kFrameSequence, kEmbedding };

  Kind kind = Kind::kFrameSequence;
  FrameMetric metric = FrameMetric::kAngularCosine;
  Eigen::MatrixXd frames;     // T x D, kind == kFrameSequence
  Eigen::VectorXd embedding;  // kind == kEmbedding

  bool Empty() const {
    return kind == Kind::kFrameSequence ? frames.rows() == 0
                                        : embedding.size() == 0;
  }

  static Representation FrameSequence(Eigen::MatrixXd frames,
                                      FrameMetric metric) {
    Representation r;
    r.kind = Kind::kFrameSequence;
    r.metric = metric;
    r.frames = std::move(frames);
    return r;
  }
  static Representation Embedding(Eigen::VectorXd v) {
    Representation r;
    r.kind = Kind::kEmbedding;
    r.metric = FrameMetric::kAngularCosine;
    r.embedding = std::move(v);
    return r;
  }
};

// Indices into the scored segment list. By construction a and x carry the
// same phone, b the other one, and all three share speaker and (prev, next).
struct Triplet {
  int a = -1;
  int b = -1;
  int x = -1;
};

struct TripletSet {
  std::vector<Triplet> triplets;
  bool untestable = false;  // no (speaker, context) cell could be formed
};

struct AbxCell {
  std::string phone_a;  // contrast, lexicographically ordered
  std::string phone_b;
  std::string speaker;
  std::string prev;
  std::string next;
  std::string subset;
  int n_triplets = 0;
  double error = 0.0;
};

}  // namespace phonelearn

#endif  // PHONELEARN_ABX_TYPES_H_
