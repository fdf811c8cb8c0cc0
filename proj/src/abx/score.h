// abx/score.h

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

#ifndef PHONELEARN_ABX_SCORE_H_
#define PHONELEARN_ABX_SCORE_H_

#include <string>
#include <vector>

#include "abx/types.h"
#include "corpus/types.h"

namespace phonelearn {

// Scores triplets: a prediction is correct when d(A,X) < d(B,X); exact ties
// earn half an error, which pins constant representations at chance. Cell
// errors are means over the triplets sharing (speaker, context); the subset
// label is attached to every cell. Distances run in parallel but results are
// worker-count invariant.
std::vector<AbxCell> AbxScore(const std::vector<PhoneSegment>& segments,
                              const std::vector<Triplet>& triplets,
                              const std::vector<Representation>& reps,
                              const std::string& subset, int workers = 0);

// contexts -> speakers -> subsets, unweighted mean at each level. All cells
// must carry the same contrast.
double AggregateCells(const std::vector<AbxCell>& cells);

}  // namespace phonelearn

#endif  // PHONELEARN_ABX_SCORE_H_
