// util/parallel.h

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

#ifndef PHONELEARN_UTIL_PARALLEL_H_
#define PHONELEARN_UTIL_PARALLEL_H_

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace phonelearn {

// Runs fn(block_index, begin, end) over fixed-size blocks of [0, n).
// The block structure depends only on n and block_size, never on the worker
// count, so any per-block state (RNG streams, partial sums combined in block
// order) is bit-identical no matter how many threads run. Exceptions from
// workers are rethrown on the calling thread.
void ParallelForBlocks(size_t n, size_t block_size, int workers,
                       const std::function<void(size_t, size_t, size_t)>& fn);

// Per-item convenience wrapper (block_size 1 semantics, chunked internally).
void ParallelForEach(size_t n, int workers,
                     const std::function<void(size_t)>& fn);

int DefaultWorkers();

}  // namespace phonelearn

#endif  // PHONELEARN_UTIL_PARALLEL_H_
