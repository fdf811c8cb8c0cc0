// abx/task.h

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

#ifndef PHONELEARN_ABX_TASK_H_
#define PHONELEARN_ABX_TASK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "abx/types.h"
#include "corpus/types.h"

namespace phonelearn {

// Enumerates ABX triplets over segments already filtered to the two contrast
// phones. A, B and X must share speaker and (prev, next) context; A and X are
// distinct tokens of one phone, B a token of the other; both phone orders are
// generated. Cells larger than max_per_cell are subsampled with a per-cell
// stream derived from seed, so results do not depend on other cells.
TripletSet EnumerateTriplets(const std::vector<PhoneSegment>& segments,
                             const std::string& phone_a,
                             const std::string& phone_b, size_t max_per_cell,
                             uint64_t seed);

}  // namespace phonelearn

#endif  // PHONELEARN_ABX_TASK_H_
