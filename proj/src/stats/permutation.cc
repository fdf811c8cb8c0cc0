// stats/permutation.cc

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

#include "stats/permutation.h"

#include <atomic>
#include <cmath>
#include <map>
#include <sstream>

#include "util/error.h"
#include "util/parallel.h"
#include "util/rng.h"

namespace phonelearn {

std::string AdvantageDirectionName(AdvantageDirection d) {
  switch (d) {
    case AdvantageDirection::kNativeBetter: return "native-better";
    case AdvantageDirection::kNonnativeBetter: return "nonnative-better";
    case AdvantageDirection::kNone: return "none";
  }
  return "none";
}

namespace {

using CellKey =
    std::tuple<std::string, std::string, std::string, std::string,
               std::string, std::string>;

CellKey KeyOf(const AbxCell& c) {
  return {c.subset, c.speaker, c.prev, c.next, c.phone_a, c.phone_b};
}

std::string KeyString(const CellKey& k) {
  std::ostringstream ss;
  ss << std::get<0>(k) << "/" << std::get<1>(k) << "/(" << std::get<2>(k)
     << "," << std::get<3>(k) << ")/" << std::get<4>(k) << "-"
     << std::get<5>(k);
  return ss.str();
}

}  // namespace

NativeAdvantageResult NativeAdvantageTest(const std::vector<AbxCell>& native,
                                          const std::vector<AbxCell>& nonnative,
                                          int n_permutations, uint64_t seed,
                                          int workers) {
  if (n_permutations < 1000)
    throw UsageError("NativeAdvantageTest: need at least 1000 permutations");

  std::map<CellKey, double> native_by_key;
  for (const auto& c : native)
    if (!native_by_key.emplace(KeyOf(c), c.error).second)
      throw DataError("NativeAdvantageTest: duplicate native cell " +
                      KeyString(KeyOf(c)));

  std::vector<double> diffs;  // nonnative - native per paired cell
  diffs.reserve(nonnative.size());
  std::map<CellKey, bool> used;
  for (const auto& c : nonnative) {
    auto it = native_by_key.find(KeyOf(c));
    if (it == native_by_key.end())
      throw DataError("NativeAdvantageTest: no native cell matches " +
                      KeyString(KeyOf(c)));
    diffs.push_back(c.error - it->second);
    used[KeyOf(c)] = true;
  }
  if (used.size() != native_by_key.size()) {
    std::string missing;
    for (const auto& [key, _] : native_by_key)
      if (!used.count(key)) {
        missing += (missing.empty() ? "" : "; ") + KeyString(key);
      }
    throw DataError("NativeAdvantageTest: native cells without a match: " +
                    missing);
  }
  const size_t n_cells = diffs.size();
  if (n_cells == 0) throw DataError("NativeAdvantageTest: no paired cells");

  double observed = 0.0;
  for (double d : diffs) observed += d;
  observed /= static_cast<double>(n_cells);

  // Swapping the two labels inside cell c flips the sign of diffs[c].
  const double threshold = std::abs(observed);
  std::atomic<int64_t> n_extreme{0};
  ParallelForBlocks(
      static_cast<size_t>(n_permutations), 64, workers,
      [&](size_t, size_t begin, size_t end) {
        int64_t local = 0;
        for (size_t r = begin; r < end; ++r) {
          Rng rng(HashCombine(DeriveSeed(seed, "permutation"), r));
          double stat = 0.0;
          for (double d : diffs)
            stat += (rng.NextU64() & 1) ? d : -d;
          stat /= static_cast<double>(n_cells);
          if (std::abs(stat) >= threshold) ++local;
        }
        n_extreme.fetch_add(local);
      });

  NativeAdvantageResult result;
  result.observed = observed;
  result.p_value = (1.0 + static_cast<double>(n_extreme.load())) /
                   (static_cast<double>(n_permutations) + 1.0);
  result.direction = observed > 0.0   ? AdvantageDirection::kNativeBetter
                     : observed < 0.0 ? AdvantageDirection::kNonnativeBetter
                                      : AdvantageDirection::kNone;
  result.n_cells = static_cast<int>(n_cells);
  result.n_permutations = n_permutations;
  return result;
}

}  // namespace phonelearn
