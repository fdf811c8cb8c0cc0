// corpus/chunks.h

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

#ifndef PHONELEARN_CORPUS_CHUNKS_H_
#define PHONELEARN_CORPUS_CHUNKS_H_

#include <cstdint>
#include <vector>

#include "corpus/types.h"

namespace phonelearn {

// Word-sized random spans: durations resampled from the empirical word
// duration distribution, start positions uniform over the valid starts of
// the fitting utterances (so chunks never cross utterance bounds). Word
// boundaries themselves are ignored. Deterministic given seed.
std::vector<Chunk> SampleChunks(const Manifest& manifest,
                                const std::vector<WordToken>& word_tokens,
                                size_t n, uint64_t seed);

}  // namespace phonelearn

#endif  // PHONELEARN_CORPUS_CHUNKS_H_
