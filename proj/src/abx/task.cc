// abx/task.cc

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

#include "abx/task.h"

#include <algorithm>
#include <map>
#include <set>

#include "util/error.h"
#include "util/rng.h"

namespace phonelearn {

namespace {

// Floyd's algorithm: k distinct indices from [0, total), returned sorted.
std::vector<uint64_t> SampleDistinct(uint64_t total, uint64_t k, Rng* rng) {
  std::set<uint64_t> chosen;
  for (uint64_t i = total - k; i < total; ++i) {
    uint64_t j = rng->UniformInt(i + 1);
    if (!chosen.insert(j).second) chosen.insert(i);
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace

TripletSet EnumerateTriplets(const std::vector<PhoneSegment>& segments,
                             const std::string& phone_a,
                             const std::string& phone_b, size_t max_per_cell,
                             uint64_t seed) {
  if (phone_a == phone_b)
    throw UsageError("EnumerateTriplets: contrast phones must differ");
  if (max_per_cell == 0)
    throw UsageError("EnumerateTriplets: max_per_cell must be positive");

  struct Cell {
    std::vector<int> a_tokens;  // indices with phone == phone_a
    std::vector<int> b_tokens;
  };
  // Ordered map keeps cell iteration deterministic.
  std::map<std::tuple<std::string, std::string, std::string>, Cell> cells;
  for (size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (s.phone != phone_a && s.phone != phone_b)
      throw DataError("EnumerateTriplets: segment with phone '" + s.phone +
                      "' outside the contrast; filter first");
    auto& cell = cells[{s.speaker, s.prev, s.next}];
    (s.phone == phone_a ? cell.a_tokens : cell.b_tokens)
        .push_back(static_cast<int>(i));
  }

  TripletSet out;
  for (const auto& [key, cell] : cells) {
    const uint64_t m = cell.a_tokens.size();
    const uint64_t n = cell.b_tokens.size();
    // Ordered (A, X) pairs of one phone crossed with every token of the
    // other; both phone role assignments.
    const uint64_t total_a_role = m >= 2 ? m * (m - 1) * n : 0;
    const uint64_t total_b_role = n >= 2 ? n * (n - 1) * m : 0;
    const uint64_t total = total_a_role + total_b_role;
    if (total == 0) continue;

    const auto& [speaker, prev, next] = key;
    Rng rng(HashCombine(seed,
                        Fnv1a64(speaker + "\x1f" + prev + "\x1f" + next)));

    std::vector<uint64_t> flat_ids;
    if (total <= max_per_cell) {
      flat_ids.resize(total);
      for (uint64_t i = 0; i < total; ++i) flat_ids[i] = i;
    } else {
      flat_ids = SampleDistinct(total, max_per_cell, &rng);
    }

    auto decode = [&](uint64_t flat, const std::vector<int>& same,
                      const std::vector<int>& other) {
      const uint64_t n_other = other.size();
      const uint64_t s_count = same.size();
      const uint64_t b_idx = flat % n_other;
      const uint64_t pair_idx = flat / n_other;
      const uint64_t i = pair_idx / (s_count - 1);
      uint64_t j = pair_idx % (s_count - 1);
      if (j >= i) ++j;  // skip the diagonal: X must be a distinct token
      return Triplet{same[i], other[b_idx], same[j]};
    };

    for (uint64_t flat : flat_ids) {
      if (flat < total_a_role)
        out.triplets.push_back(decode(flat, cell.a_tokens, cell.b_tokens));
      else
        out.triplets.push_back(
            decode(flat - total_a_role, cell.b_tokens, cell.a_tokens));
    }
  }
  out.untestable = out.triplets.empty();
  return out;
}

}  // namespace phonelearn
