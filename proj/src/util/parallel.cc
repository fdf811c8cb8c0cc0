// util/parallel.cc

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

#include "util/parallel.h"

#include <algorithm>

namespace phonelearn {

int DefaultWorkers() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void ParallelForBlocks(size_t n, size_t block_size, int workers,
                       const std::function<void(size_t, size_t, size_t)>& fn) {
  if (n == 0) return;
  if (block_size == 0) block_size = 1;
  const size_t n_blocks = (n + block_size - 1) / block_size;
  if (workers <= 0) workers = DefaultWorkers();
  const size_t n_threads =
      std::min<size_t>(static_cast<size_t>(workers), n_blocks);

  auto run_block = [&](size_t b) {
    size_t begin = b * block_size;
    size_t end = std::min(begin + block_size, n);
    fn(b, begin, end);
  };

  if (n_threads <= 1) {
    for (size_t b = 0; b < n_blocks; ++b) run_block(b);
    return;
  }

  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&]() {
    for (;;) {
      size_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      try {
        run_block(b);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

void ParallelForEach(size_t n, int workers,
                     const std::function<void(size_t)>& fn) {
  // Chunk so scheduling overhead stays small; per-item work must not depend
  // on which chunk it lands in.
  size_t block = std::max<size_t>(1, n / 256);
  ParallelForBlocks(n, block, workers, [&](size_t, size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace phonelearn
