// tests/test_abx.cc

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

#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "abx/distance.h"
#include "abx/score.h"
#include "abx/task.h"
#include "util/error.h"
#include "util/rng.h"

using namespace phonelearn;

namespace {

Eigen::VectorXd V(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Exhaustive enumeration of all monotone DTW paths; minimizes the
// path-averaged cost exactly like the production DP must.
double BruteForceDtw(const Eigen::MatrixXd& s1, const Eigen::MatrixXd& s2,
                     FrameMetric metric) {
  const int t1 = static_cast<int>(s1.rows());
  const int t2 = static_cast<int>(s2.rows());
  Eigen::MatrixXd cost(t1, t2);
  for (int i = 0; i < t1; ++i)
    for (int j = 0; j < t2; ++j)
      cost(i, j) =
          FrameDistance(s1.row(i).transpose(), s2.row(j).transpose(), metric);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(int, int, double, int)> walk = [&](int i, int j,
                                                        double total,
                                                        int length) {
    total += cost(i, j);
    ++length;
    if (i == t1 - 1 && j == t2 - 1) {
      best = std::min(best, total / length);
      return;
    }
    if (i + 1 < t1) walk(i + 1, j, total, length);
    if (j + 1 < t2) walk(i, j + 1, total, length);
    if (i + 1 < t1 && j + 1 < t2) walk(i + 1, j + 1, total, length);
  };
  walk(0, 0, 0.0, 0);
  return best;
}

PhoneSegment Seg(const std::string& utt, const std::string& phone,
                 double start, const std::string& speaker = "s1",
                 const std::string& prev = "a",
                 const std::string& next = "a") {
  return PhoneSegment{utt, speaker, phone, start, start + 0.1, prev, next};
}

}  // namespace

TEST_CASE("frame distance identities") {
  auto p = V({0.2, 0.3, 0.5});
  CHECK(FrameDistance(p, p, FrameMetric::kSymmetrizedKl) ==
        doctest::Approx(0.0));
  auto u = V({1.0, 0.0});
  auto w = V({0.0, 1.0});
  CHECK(FrameDistance(u, u, FrameMetric::kAngularCosine) ==
        doctest::Approx(0.0));
  CHECK(FrameDistance(u, w, FrameMetric::kAngularCosine) ==
        doctest::Approx(0.5));
}

TEST_CASE("symmetrized KL with the declared floor on disjoint support") {
  auto p = V({1.0, 0.0});
  auto q = V({0.0, 1.0});
  const double d = FrameDistance(p, q, FrameMetric::kSymmetrizedKl);
  // 0.5*[KL(p||q)+KL(q||p)] with eps=1e-10 flooring ~ log(1e10).
  CHECK(d == doctest::Approx(23.0259).epsilon(1e-3));
}

TEST_CASE("angular cosine rejects zero vectors") {
  CHECK_THROWS_AS(
      FrameDistance(V({0.0, 0.0}), V({1.0, 0.0}),
                    FrameMetric::kAngularCosine),
      DataError);
}

TEST_CASE("dtw trivial cases") {
  Eigen::MatrixXd s(3, 2);
  s << 1, 0, 0, 1, 1, 1;
  CHECK(DtwDistance(s, s, FrameMetric::kAngularCosine) ==
        doctest::Approx(0.0));
  Eigen::MatrixXd a(1, 2), b(1, 2);
  a << 1, 0;
  b << 0, 1;
  CHECK(DtwDistance(a, b, FrameMetric::kAngularCosine) ==
        doctest::Approx(0.5));
}

TEST_CASE("dtw equals exhaustive path enumeration on random pairs") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const int t1 = 1 + static_cast<int>(rng.UniformInt(4));
    const int t2 = 1 + static_cast<int>(rng.UniformInt(3));
    Eigen::MatrixXd s1(t1, 3), s2(t2, 3);
    for (int i = 0; i < t1; ++i)
      for (int d = 0; d < 3; ++d) s1(i, d) = rng.Uniform(0.1, 1.0);
    for (int i = 0; i < t2; ++i)
      for (int d = 0; d < 3; ++d) s2(i, d) = rng.Uniform(0.1, 1.0);
    const double dp = DtwDistance(s1, s2, FrameMetric::kAngularCosine);
    const double brute = BruteForceDtw(s1, s2, FrameMetric::kAngularCosine);
    CHECK(dp == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("dtw is symmetric for symmetric metrics") {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd s1(2 + rng.UniformInt(4), 4);
    Eigen::MatrixXd s2(2 + rng.UniformInt(4), 4);
    for (Eigen::Index i = 0; i < s1.rows(); ++i)
      for (int d = 0; d < 4; ++d) s1(i, d) = rng.Uniform(0.05, 1.0);
    for (Eigen::Index i = 0; i < s2.rows(); ++i)
      for (int d = 0; d < 4; ++d) s2(i, d) = rng.Uniform(0.05, 1.0);
    CHECK(DtwDistance(s1, s2, FrameMetric::kAngularCosine) ==
          doctest::Approx(DtwDistance(s2, s1, FrameMetric::kAngularCosine))
              .epsilon(1e-12));
  }
}

TEST_CASE("dtw alignment path is monotone and spans both sequences") {
  Rng rng(47);
  Eigen::MatrixXd s1(5, 3), s2(7, 3);
  for (Eigen::Index i = 0; i < s1.rows(); ++i)
    for (int d = 0; d < 3; ++d) s1(i, d) = rng.Uniform(0.1, 1.0);
  for (Eigen::Index i = 0; i < s2.rows(); ++i)
    for (int d = 0; d < 3; ++d) s2(i, d) = rng.Uniform(0.1, 1.0);
  auto al = DtwAlign(s1, s2, FrameMetric::kAngularCosine);
  REQUIRE(!al.path.empty());
  CHECK(al.path.front() == std::pair<int, int>{0, 0});
  CHECK(al.path.back() == std::pair<int, int>{4, 6});
  for (size_t k = 1; k < al.path.size(); ++k) {
    int di = al.path[k].first - al.path[k - 1].first;
    int dj = al.path[k].second - al.path[k - 1].second;
    CHECK(di >= 0);
    CHECK(dj >= 0);
    CHECK(di + dj >= 1);
    CHECK(di <= 1);
    CHECK(dj <= 1);
  }
}

TEST_CASE("segment distance dispatch and errors") {
  auto e1 = Representation::Embedding(V({1.0, 0.0}));
  auto e2 = Representation::Embedding(V({-1.0, 0.0}));
  CHECK(SegmentDistance(e1, e1) == doctest::Approx(0.0));
  CHECK(SegmentDistance(e1, e2) == doctest::Approx(1.0));  // antipodal

  Eigen::MatrixXd f(2, 2);
  f << 0.5, 0.5, 0.25, 0.75;
  auto fr = Representation::FrameSequence(f, FrameMetric::kSymmetrizedKl);
  CHECK(SegmentDistance(fr, fr) == doctest::Approx(0.0));
  CHECK_THROWS_AS(SegmentDistance(e1, fr), DataError);
  auto fr_cos = Representation::FrameSequence(f, FrameMetric::kAngularCosine);
  CHECK_THROWS_AS(SegmentDistance(fr, fr_cos), DataError);
}

TEST_CASE("triplet counting from the invariants: 2 of [l], 1 of [r]") {
  std::vector<PhoneSegment> segs = {Seg("u1", "l", 0.0), Seg("u2", "l", 0.0),
                                    Seg("u3", "r", 0.0)};
  auto set = EnumerateTriplets(segs, "l", "r", 100, 1);
  CHECK_FALSE(set.untestable);
  // Both (A,X) orders of the two [l] tokens; no triplet can put [r] in the
  // A role with a single [r] token.
  CHECK(set.triplets.size() == 2);
  for (const auto& t : set.triplets) {
    CHECK(segs[t.a].phone == "l");
    CHECK(segs[t.x].phone == "l");
    CHECK(segs[t.b].phone == "r");
    CHECK(t.a != t.x);
  }
}

TEST_CASE("no within-speaker pair means untestable") {
  std::vector<PhoneSegment> segs = {Seg("u1", "l", 0.0, "s1"),
                                    Seg("u2", "l", 0.0, "s2"),
                                    Seg("u3", "r", 0.0, "s1"),
                                    Seg("u4", "r", 0.0, "s2")};
  auto set = EnumerateTriplets(segs, "l", "r", 100, 1);
  CHECK(set.untestable);
  CHECK(set.triplets.empty());
}

TEST_CASE("per-cell cap yields exactly max_per_cell, deterministically") {
  std::vector<PhoneSegment> segs;
  for (int i = 0; i < 8; ++i)
    segs.push_back(Seg("ul" + std::to_string(i), "l", 0.1 * i));
  for (int i = 0; i < 5; ++i)
    segs.push_back(Seg("ur" + std::to_string(i), "r", 0.1 * i));
  // 8*7*5 + 5*4*8 = 280 + 160 = 440 candidates.
  auto all = EnumerateTriplets(segs, "l", "r", 1000, 7);
  CHECK(all.triplets.size() == 440);
  auto capped = EnumerateTriplets(segs, "l", "r", 10, 7);
  CHECK(capped.triplets.size() == 10);
  auto capped2 = EnumerateTriplets(segs, "l", "r", 10, 7);
  REQUIRE(capped2.triplets.size() == 10);
  for (size_t i = 0; i < 10; ++i) {
    CHECK(capped.triplets[i].a == capped2.triplets[i].a);
    CHECK(capped.triplets[i].b == capped2.triplets[i].b);
    CHECK(capped.triplets[i].x == capped2.triplets[i].x);
  }
  // Distinct seeds pick a different subsample.
  auto other_seed = EnumerateTriplets(segs, "l", "r", 10, 8);
  bool any_diff = false;
  for (size_t i = 0; i < 10; ++i)
    any_diff |= other_seed.triplets[i].a != capped.triplets[i].a ||
                other_seed.triplets[i].x != capped.triplets[i].x ||
                other_seed.triplets[i].b != capped.triplets[i].b;
  CHECK(any_diff);
}

TEST_CASE("triplets never cross speakers or contexts") {
  Rng rng(3);
  std::vector<PhoneSegment> segs;
  for (int i = 0; i < 60; ++i) {
    std::string speaker = "s" + std::to_string(rng.UniformInt(3));
    std::string prev = rng.UniformInt(2) ? "a" : "i";
    std::string next = rng.UniformInt(2) ? "a" : "i";
    segs.push_back(Seg("u" + std::to_string(i),
                       rng.UniformInt(2) ? "l" : "r", 0.0, speaker, prev,
                       next));
  }
  auto set = EnumerateTriplets(segs, "l", "r", 50, 5);
  for (const auto& t : set.triplets) {
    CHECK(segs[t.a].speaker == segs[t.b].speaker);
    CHECK(segs[t.a].speaker == segs[t.x].speaker);
    CHECK(segs[t.a].prev == segs[t.b].prev);
    CHECK(segs[t.a].next == segs[t.x].next);
    CHECK(segs[t.a].phone == segs[t.x].phone);
    CHECK(segs[t.a].phone != segs[t.b].phone);
  }
}

namespace {

// Naive re-scoring used as the oracle for AbxScore.
std::map<std::string, std::pair<double, int>> NaiveCellErrors(
    const std::vector<PhoneSegment>& segs,
    const std::vector<Triplet>& triplets,
    const std::vector<Representation>& reps) {
  std::map<std::string, std::pair<double, int>> cells;
  for (const auto& t : triplets) {
    double dax = SegmentDistance(reps[t.a], reps[t.x]);
    double dbx = SegmentDistance(reps[t.b], reps[t.x]);
    double err = dax < dbx ? 0.0 : (dax == dbx ? 0.5 : 1.0);
    std::string key = segs[t.a].speaker + "|" + segs[t.a].prev + "|" +
                      segs[t.a].next;
    cells[key].first += err;
    cells[key].second += 1;
  }
  return cells;
}

std::vector<Representation> RandomEmbeddings(size_t n, int dim,
                                             uint64_t seed) {
  std::vector<Representation> reps;
  for (size_t i = 0; i < n; ++i) {
    Rng rng(HashCombine(seed, i));
    Eigen::VectorXd v(dim);
    for (int d = 0; d < dim; ++d) v[d] = rng.Gaussian();
    reps.push_back(Representation::Embedding(v));
  }
  return reps;
}

}  // namespace

TEST_CASE("abx_score equals a naive reimplementation exactly") {
  Rng rng(11);
  std::vector<PhoneSegment> segs;
  for (int i = 0; i < 40; ++i) {
    segs.push_back(Seg("u" + std::to_string(i),
                       rng.UniformInt(2) ? "l" : "r", 0.0,
                       "s" + std::to_string(rng.UniformInt(2))));
  }
  auto set = EnumerateTriplets(segs, "l", "r", 200, 3);
  REQUIRE(set.triplets.size() <= 400);
  REQUIRE(!set.triplets.empty());
  auto reps = RandomEmbeddings(segs.size(), 5, 99);
  for (int workers : {1, 2, 4}) {
    auto cells = AbxScore(segs, set.triplets, reps, "t", workers);
    auto naive = NaiveCellErrors(segs, set.triplets, reps);
    REQUIRE(cells.size() == naive.size());
    for (const auto& c : cells) {
      auto key = c.speaker + "|" + c.prev + "|" + c.next;
      REQUIRE(naive.count(key) == 1);
      CHECK(c.n_triplets == naive[key].second);
      CHECK(c.error == naive[key].first / naive[key].second);
    }
  }
}

TEST_CASE("abx_score oracle cases") {
  std::vector<PhoneSegment> segs = {Seg("u1", "l", 0.0), Seg("u2", "l", 0.1),
                                    Seg("u3", "r", 0.0)};
  SUBCASE("A == X exactly and B differs: error 0") {
    std::vector<Representation> reps = {
        Representation::Embedding(V({1.0, 0.0})),
        Representation::Embedding(V({1.0, 0.0})),
        Representation::Embedding(V({0.0, 1.0}))};
    auto set = EnumerateTriplets(segs, "l", "r", 10, 1);
    auto cells = AbxScore(segs, set.triplets, reps, "t");
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].error == 0.0);
  }
  SUBCASE("all segments identical: every comparison ties at chance") {
    std::vector<Representation> reps(
        3, Representation::Embedding(V({1.0, 2.0})));
    auto set = EnumerateTriplets(segs, "l", "r", 10, 1);
    auto cells = AbxScore(segs, set.triplets, reps, "t");
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].error == 0.5);
  }
  SUBCASE("1-d oracle embedded on rays: |A-X| < |B-X| is correct") {
    std::vector<Representation> reps = {
        Representation::Embedding(V({1.0, 0.0})),
        Representation::Embedding(V({1.0, 0.1})),
        Representation::Embedding(V({1.0, 5.0}))};
    auto set = EnumerateTriplets(segs, "l", "r", 10, 1);
    auto cells = AbxScore(segs, set.triplets, reps, "t");
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].error == 0.0);
  }
}

TEST_CASE("abx_score names the segment when a representation is missing") {
  std::vector<PhoneSegment> segs = {Seg("u1", "l", 0.0), Seg("u2", "l", 0.1),
                                    Seg("u3", "r", 0.0)};
  std::vector<Representation> reps = {
      Representation::Embedding(V({1.0, 0.0})), Representation{},
      Representation::Embedding(V({0.0, 1.0}))};
  reps[1].frames.resize(0, 0);  // empty
  auto set = EnumerateTriplets(segs, "l", "r", 10, 1);
  try {
    AbxScore(segs, set.triplets, reps, "t");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("u2") != std::string::npos);
  }
}

TEST_CASE("monotone transforms of distances leave decisions unchanged") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    double dax = rng.Uniform(0.0, 2.0);
    double dbx = rng.Uniform(0.0, 2.0);
    const bool base = dax < dbx;
    CHECK((std::exp(dax) < std::exp(dbx)) == base);
    CHECK((3.0 * dax + 1.0 < 3.0 * dbx + 1.0) == base);
  }
}

TEST_CASE("aggregate cells: hierarchy arithmetic") {
  auto cell = [](const std::string& speaker, const std::string& prev,
                 double err, const std::string& subset = "t") {
    return AbxCell{"l", "r", speaker, prev, "a", subset, 10, err};
  };
  SUBCASE("all cells at chance aggregate to chance") {
    std::vector<AbxCell> cells = {cell("s1", "a", 0.5), cell("s1", "i", 0.5),
                                  cell("s2", "a", 0.5)};
    CHECK(AggregateCells(cells) == doctest::Approx(0.5));
  }
  SUBCASE("speaker means average before the subset mean") {
    std::vector<AbxCell> cells = {cell("s1", "a", 0.0), cell("s1", "i", 1.0),
                                  cell("s2", "a", 0.5)};
    CHECK(AggregateCells(cells) == doctest::Approx(0.5));
  }
  SUBCASE("single cell aggregates to itself") {
    std::vector<AbxCell> cells = {cell("s1", "a", 0.37)};
    CHECK(AggregateCells(cells) == doctest::Approx(0.37));
  }
  SUBCASE("mixed contrasts are rejected") {
    std::vector<AbxCell> cells = {cell("s1", "a", 0.2)};
    cells.push_back(AbxCell{"x", "y", "s1", "a", "a", "t", 5, 0.1});
    CHECK_THROWS_AS(AggregateCells(cells), DataError);
  }
}

TEST_CASE("chance anchor: input-independent representations sit at chance") {
  // 100 speakers, one context each: the aggregate is the mean over
  // independent cells, so its standard error is estimable across cells
  // (per-triplet SEs would be too small: triplets share segments).
  std::vector<PhoneSegment> segs;
  for (int spk = 0; spk < 100; ++spk) {
    for (int i = 0; i < 12; ++i) {
      segs.push_back(Seg("u" + std::to_string(spk) + "_l" + std::to_string(i),
                         "l", 0.0, "s" + std::to_string(spk)));
      segs.push_back(Seg("u" + std::to_string(spk) + "_r" + std::to_string(i),
                         "r", 0.0, "s" + std::to_string(spk)));
    }
  }
  auto set = EnumerateTriplets(segs, "l", "r", 150, 5);
  REQUIRE(set.triplets.size() >= 10000);

  SUBCASE("constant representation ties every triplet: exactly chance") {
    std::vector<Representation> reps(
        segs.size(), Representation::Embedding(V({1.0, 2.0, 3.0})));
    auto cells = AbxScore(segs, set.triplets, reps, "t");
    CHECK(AggregateCells(cells) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("random representations: within 3 SE of chance") {
    auto reps = RandomEmbeddings(segs.size(), 8, 12345);
    auto cells = AbxScore(segs, set.triplets, reps, "t");
    double aggregate = AggregateCells(cells);
    double mean = 0.0;
    for (const auto& c : cells) mean += c.error;
    mean /= cells.size();
    double var = 0.0;
    for (const auto& c : cells) var += (c.error - mean) * (c.error - mean);
    var /= (cells.size() - 1);
    const double se = std::sqrt(var / cells.size());
    CHECK(std::abs(aggregate - 0.5) <= 3 * se);
  }
}
