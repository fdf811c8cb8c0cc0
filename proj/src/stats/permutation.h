// stats/permutation.h

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

#ifndef PHONELEARN_STATS_PERMUTATION_H_
#define PHONELEARN_STATS_PERMUTATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "abx/types.h"

namespace phonelearn {

enum class AdvantageDirection { kNativeBetter, kNonnativeBetter, kNone };

std::string AdvantageDirectionName(AdvantageDirection d);

struct NativeAdvantageResult {
  double observed = 0.0;  // mean over paired cells of (nonnative - native)
  double p_value = 1.0;   // two-tailed, add-one smoothed
  AdvantageDirection direction = AdvantageDirection::kNone;
  int n_cells = 0;
  int n_permutations = 0;
};

// Paired within-cell permutation test. Cells pair on
// (subset, speaker, prev, next, contrast); unmatched keys are an error.
// The null swaps native/non-native labels independently per cell, which
// stratifies by subset, speaker and context at once. Replicates run in
// parallel on per-replicate streams, so the p-value is worker-count
// invariant.
NativeAdvantageResult NativeAdvantageTest(
    const std::vector<AbxCell>& native, const std::vector<AbxCell>& nonnative,
    int n_permutations, uint64_t seed, int workers = 0);

}  // namespace phonelearn

#endif  // PHONELEARN_STATS_PERMUTATION_H_
