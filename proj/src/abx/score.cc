// abx/score.cc

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

#include "abx/score.h"

#include <algorithm>
#include <map>

#include "abx/distance.h"
#include "util/error.h"
#include "util/parallel.h"

namespace phonelearn {

std::vector<AbxCell> AbxScore(const std::vector<PhoneSegment>& segments,
                              const std::vector<Triplet>& triplets,
                              const std::vector<Representation>& reps,
                              const std::string& subset, int workers) {
  auto rep_of = [&](int idx) -> const Representation& {
    if (idx < 0 || static_cast<size_t>(idx) >= reps.size() ||
        reps[idx].Empty()) {
      const auto& s = segments.at(idx);
      throw DataError("AbxScore: missing representation for segment " +
                      s.utterance + " [" + std::to_string(s.start) + ", " +
                      std::to_string(s.end) + ") '" + s.phone + "'");
    }
    return reps[idx];
  };

  std::vector<double> errors(triplets.size());
  ParallelForEach(triplets.size(), workers, [&](size_t i) {
    const Triplet& t = triplets[i];
    const double d_ax = SegmentDistance(rep_of(t.a), rep_of(t.x));
    const double d_bx = SegmentDistance(rep_of(t.b), rep_of(t.x));
    errors[i] = d_ax < d_bx ? 0.0 : (d_ax == d_bx ? 0.5 : 1.0);
  });

  struct CellAcc {
    double sum = 0.0;
    int count = 0;
  };
  std::map<std::tuple<std::string, std::string, std::string>, CellAcc> acc;
  std::string phone_a, phone_b;
  for (size_t i = 0; i < triplets.size(); ++i) {
    const auto& a = segments.at(triplets[i].a);
    const auto& b = segments.at(triplets[i].b);
    if (phone_a.empty()) {
      phone_a = std::min(a.phone, b.phone);
      phone_b = std::max(a.phone, b.phone);
    }
    auto& cell = acc[{a.speaker, a.prev, a.next}];
    cell.sum += errors[i];
    cell.count += 1;
  }

  std::vector<AbxCell> cells;
  cells.reserve(acc.size());
  for (const auto& [key, v] : acc) {
    const auto& [speaker, prev, next] = key;
    cells.push_back(AbxCell{phone_a, phone_b, speaker, prev, next, subset,
                            v.count, v.sum / v.count});
  }
  return cells;
}

double AggregateCells(const std::vector<AbxCell>& cells) {
  if (cells.empty()) throw DataError("AggregateCells: no cells");
  for (const auto& c : cells) {
    if (c.phone_a != cells.front().phone_a ||
        c.phone_b != cells.front().phone_b)
      throw DataError("AggregateCells: mixed contrasts (" + c.phone_a + "-" +
                      c.phone_b + " vs " + cells.front().phone_a + "-" +
                      cells.front().phone_b + ")");
  }
  // contexts within (subset, speaker) -> speakers within subset -> subsets.
  std::map<std::string, std::map<std::string, std::vector<double>>> grouped;
  for (const auto& c : cells)
    grouped[c.subset][c.speaker].push_back(c.error);
  double subset_sum = 0.0;
  for (const auto& [subset, speakers] : grouped) {
    double speaker_sum = 0.0;
    for (const auto& [speaker, errs] : speakers) {
      double context_sum = 0.0;
      for (double e : errs) context_sum += e;
      speaker_sum += context_sum / errs.size();
    }
    subset_sum += speaker_sum / speakers.size();
  }
  return subset_sum / grouped.size();
}

}  // namespace phonelearn
