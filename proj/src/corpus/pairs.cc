// corpus/pairs.cc

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

#include "corpus/pairs.h"

#include <map>

#include "util/error.h"
#include "util/rng.h"

namespace phonelearn {

std::vector<TokenPair> MakeWordPairs(const std::vector<WordToken>& tokens,
                                     size_t max_pairs_per_type,
                                     uint64_t seed) {
  if (tokens.empty()) throw DataError("MakeWordPairs: no word tokens");

  // Group by word type; map keeps word order stable across runs.
  std::map<std::string, std::vector<const WordToken*>> by_type;
  for (const auto& t : tokens) {
    if (t.word.empty()) throw DataError("MakeWordPairs: empty word label");
    by_type[t.word].push_back(&t);
  }

  std::vector<TokenPair> pairs;
  for (const auto& [word, insts] : by_type) {
    const size_t n = insts.size();
    if (n < 2) continue;
    const size_t total = n * (n - 1) / 2;
    // Per-type stream so the subsample for one word does not depend on how
    // many other word types exist.
    Rng rng(HashCombine(seed, Fnv1a64(word)));
    std::vector<size_t> chosen;
    if (total <= max_pairs_per_type) {
      chosen.resize(total);
      for (size_t i = 0; i < total; ++i) chosen[i] = i;
    } else {
      std::vector<size_t> all(total);
      for (size_t i = 0; i < total; ++i) all[i] = i;
      // Partial Fisher-Yates: first max_pairs_per_type entries.
      for (size_t i = 0; i < max_pairs_per_type; ++i) {
        size_t j = i + rng.UniformInt(total - i);
        std::swap(all[i], all[j]);
      }
      chosen.assign(all.begin(), all.begin() + max_pairs_per_type);
    }
    for (size_t flat : chosen) {
      // Decode flat index into (i, j), i < j, row-major over the upper
      // triangle.
      size_t i = 0, row_len = n - 1;
      while (flat >= row_len) {
        flat -= row_len;
        --row_len;
        ++i;
      }
      size_t j = i + 1 + flat;
      pairs.push_back(TokenPair{*insts[i], *insts[j], {}});
    }
  }
  return pairs;
}

}  // namespace phonelearn
