// corpus/pairs.h

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

#ifndef PHONELEARN_CORPUS_PAIRS_H_
#define PHONELEARN_CORPUS_PAIRS_H_

#include <cstdint>
#include <vector>

#include "corpus/types.h"

namespace phonelearn {

// All unordered pairs of distinct same-word tokens, mined across speakers,
// subsampled per word type to max_pairs_per_type. Deterministic given seed.
// Word types with fewer than two tokens contribute nothing.
std::vector<TokenPair> MakeWordPairs(const std::vector<WordToken>& tokens,
                                     size_t max_pairs_per_type, uint64_t seed);

}  // namespace phonelearn

#endif  // PHONELEARN_CORPUS_PAIRS_H_
