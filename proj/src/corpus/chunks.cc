// corpus/chunks.cc

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

#include "corpus/chunks.h"

#include <algorithm>

#include "util/error.h"
#include "util/rng.h"

namespace phonelearn {

std::vector<Chunk> SampleChunks(const Manifest& manifest,
                                const std::vector<WordToken>& word_tokens,
                                size_t n, uint64_t seed) {
  if (n == 0) throw UsageError("SampleChunks: n must be positive");
  if (word_tokens.empty())
    throw DataError("SampleChunks: empty word token list");
  if (manifest.utterances.empty())
    throw DataError("SampleChunks: manifest has no utterances");

  std::vector<double> durations(word_tokens.size());
  for (size_t i = 0; i < word_tokens.size(); ++i)
    durations[i] = word_tokens[i].Duration();

  Rng rng(seed);
  std::vector<Chunk> chunks;
  chunks.reserve(n);
  for (size_t c = 0; c < n; ++c) {
    const double dur = durations[rng.UniformInt(durations.size())];
    // Start uniform over all valid start positions corpus-wide: pick the
    // utterance with probability proportional to its valid-start mass.
    double total_mass = 0.0;
    for (const auto& u : manifest.utterances)
      total_mass += std::max(0.0, u.duration - dur);
    if (total_mass <= 0.0)
      throw DataError("SampleChunks: chunk duration " + std::to_string(dur) +
                      " s exceeds every utterance");
    double pick = rng.Uniform() * total_mass;
    const Utterance* chosen = nullptr;
    double offset = 0.0;
    for (const auto& u : manifest.utterances) {
      double mass = std::max(0.0, u.duration - dur);
      if (pick < mass) {
        chosen = &u;
        offset = pick;
        break;
      }
      pick -= mass;
    }
    if (chosen == nullptr) {  // numerical edge of the scan
      for (auto it = manifest.utterances.rbegin();
           it != manifest.utterances.rend(); ++it) {
        if (it->duration > dur) {
          chosen = &*it;
          offset = it->duration - dur;
          break;
        }
      }
    }
    chunks.push_back(Chunk{chosen->id, offset, offset + dur});
  }
  return chunks;
}

}  // namespace phonelearn
