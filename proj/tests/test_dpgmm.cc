// tests/test_dpgmm.cc

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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <vector>

#include "dpgmm/model.h"
#include "dpgmm/niw.h"
#include "dpgmm/sampler.h"
#include "helpers.h"
#include "util/error.h"
#include "util/rng.h"

using namespace phonelearn;
using phonelearn::testing::AdjustedRandIndex;
using phonelearn::testing::DpPosteriorOracle;

namespace {

// Mixture of well-separated Gaussians; returns data (D x N) and labels.
std::pair<Eigen::MatrixXd, std::vector<int>> SeparatedClusters(
    int dim, int n_per_cluster, int k, double separation, uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd centers(dim, k);
  for (int c = 0; c < k; ++c)
    for (int d = 0; d < dim; ++d)
      centers(d, c) = separation * rng.Gaussian();
  Eigen::MatrixXd data(dim, n_per_cluster * k);
  std::vector<int> labels(n_per_cluster * k);
  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < n_per_cluster; ++i) {
      const int col = c * n_per_cluster + i;
      labels[col] = c;
      for (int d = 0; d < dim; ++d)
        data(d, col) = centers(d, c) + rng.Gaussian();
    }
  }
  return {data, labels};
}

NiwParams ToyPrior() {
  NiwParams prior;
  prior.kappa = 0.5;
  prior.nu = 3.0;
  prior.mean = Eigen::VectorXd::Zero(1);
  prior.scale = Eigen::MatrixXd::Identity(1, 1) * 2.0;
  return prior;
}

}  // namespace

TEST_CASE("niw posterior and marginal basics") {
  NiwParams prior = ToyPrior();
  SuffStats stats;
  stats.Init(1);
  stats.count = 4;
  stats.sum(0) = 8.0;        // mean 2
  stats.outer(0, 0) = 20.0;  // sum of squares
  NiwParams post = NiwPosterior(prior, stats);
  CHECK(post.kappa == doctest::Approx(4.5));
  CHECK(post.nu == doctest::Approx(7.0));
  CHECK(post.mean(0) == doctest::Approx(8.0 / 4.5));
  // Marginal likelihood must decompose sequentially:
  // f(x1, x2) = f(x1) * f(x2 | x1).
  SuffStats s1;
  s1.Init(1);
  s1.count = 1;
  s1.sum(0) = 1.5;
  s1.outer(0, 0) = 2.25;
  SuffStats s12 = s1;
  s12.count = 2;
  s12.sum(0) = 1.5 - 0.7;
  s12.outer(0, 0) = 2.25 + 0.49;
  NiwParams post1 = NiwPosterior(prior, s1);
  SuffStats s2_only;
  s2_only.Init(1);
  s2_only.count = 1;
  s2_only.sum(0) = -0.7;
  s2_only.outer(0, 0) = 0.49;
  const double joint = NiwLogMarginal(prior, s12);
  const double chained =
      NiwLogMarginal(prior, s1) + NiwLogMarginal(post1, s2_only);
  CHECK(joint == doctest::Approx(chained).epsilon(1e-10));
}

TEST_CASE("sampled NIW covariances are SPD and concentrate with data") {
  NiwParams prior = ToyPrior();
  SuffStats stats;
  stats.Init(1);
  stats.count = 1000;
  stats.sum(0) = 3000.0;                      // mean 3
  stats.outer(0, 0) = 1000.0 * (9.0 + 0.25);  // variance 0.25
  NiwParams post = NiwPosterior(prior, stats);
  Rng rng(5);
  double mean_acc = 0.0, var_acc = 0.0;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    GaussianParams g = SampleNiw(post, &rng);
    CHECK(g.chol(0, 0) > 0.0);
    mean_acc += g.mean(0);
    var_acc += g.chol(0, 0) * g.chol(0, 0);
  }
  CHECK(mean_acc / n == doctest::Approx(3.0).epsilon(0.01));
  CHECK(var_acc / n == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("init: k0 clusters on enough frames, deterministic under seed") {
  auto [data, labels] = SeparatedClusters(6, 50, 4, 8.0, 21);
  DpgmmHyper hyper = DpgmmHyper::FromData(data);
  auto s1 = DpgmmInit(data, 10, hyper, 5);
  CHECK(s1.NumComponents() == 10);
  auto s2 = DpgmmInit(data, 10, hyper, 5);
  REQUIRE(s2.NumComponents() == 10);
  CHECK(s1.assignment == s2.assignment);
  for (int k = 0; k < 10; ++k) {
    CHECK(s1.components[k].stats.count ==
          doctest::Approx(s2.components[k].stats.count));
    CHECK(s1.components[k].gaussian.mean.isApprox(
        s2.components[k].gaussian.mean));
  }
}

TEST_CASE("init: k0 = 1 puts every frame in one cluster near the data mean") {
  auto [data, labels] = SeparatedClusters(4, 100, 2, 3.0, 31);
  auto state = DpgmmInit(data, 1, DpgmmHyper::FromData(data), 3);
  REQUIRE(state.NumComponents() == 1);
  CHECK(state.components[0].stats.count == doctest::Approx(200));
  Eigen::VectorXd mean = data.rowwise().mean();
  // Posterior-sampled mean concentrates near the empirical mean.
  CHECK((state.components[0].gaussian.mean - mean).norm() < 0.5);
}

TEST_CASE("init errors: bad k0, too few frames, zero-variance dimension") {
  auto [data, labels] = SeparatedClusters(3, 30, 2, 4.0, 7);
  CHECK_THROWS_AS(DpgmmInit(data, 0, DpgmmHyper::FromData(data), 1),
                  UsageError);
  Eigen::MatrixXd tiny = data.leftCols(3);
  CHECK_THROWS_AS(DpgmmInit(tiny, 10, DpgmmHyper::FromData(tiny), 1),
                  DataError);
  Eigen::MatrixXd flat = data;
  flat.row(1).setZero();
  CHECK_THROWS_AS(DpgmmHyper::FromData(flat), DataError);
}

TEST_CASE("two separable Gaussians are recovered from k0 = 10") {
  auto [data, labels] = SeparatedClusters(5, 400, 2, 10.0, 77);
  SweepOptions options;
  options.workers = 2;
  auto result =
      DpgmmTrain(data, 10, 60, DpgmmHyper::FromData(data), 13, options);
  // Re-derive final assignments from the model for the ARI check.
  Posteriorgram pg = ComputePosteriorgram(result.model, data.transpose());
  std::vector<int> assigned(data.cols());
  for (Eigen::Index i = 0; i < pg.rows.rows(); ++i) {
    Eigen::Index argmax;
    pg.rows.row(i).maxCoeff(&argmax);
    assigned[i] = static_cast<int>(argmax);
  }
  CHECK(AdjustedRandIndex(assigned, labels) >= 0.95);
}

TEST_CASE("split proposals on unimodal data are overwhelmingly rejected") {
  Rng rng(3);
  Eigen::MatrixXd data(2, 600);
  for (Eigen::Index i = 0; i < data.cols(); ++i) {
    data(0, i) = rng.Gaussian();
    data(1, i) = rng.Gaussian();
  }
  DpgmmHyper hyper = DpgmmHyper::FromData(data, /*alpha=*/1e-4);
  auto state = DpgmmInit(data, 1, hyper, 9);
  int proposed = 0, accepted = 0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    auto record = DpgmmSweep(&state, data);
    proposed += record.splits_proposed;
    accepted += record.splits_accepted;
  }
  REQUIRE(proposed > 0);
  CHECK(static_cast<double>(accepted) / proposed < 0.05);
}

TEST_CASE("duplicate frames: prior keeps covariances SPD, no crash") {
  Eigen::MatrixXd data(3, 40);
  for (Eigen::Index i = 0; i < 40; ++i)
    data.col(i) = Eigen::Vector3d(i < 20 ? -1.0 : 1.0, 0.5, -0.5);
  // Explicit prior: the duplicated data has zero variance in two dims.
  DpgmmHyper hyper;
  hyper.alpha = 1.0;
  hyper.niw.kappa = 0.1;
  hyper.niw.nu = 6.0;
  hyper.niw.mean = Eigen::VectorXd::Zero(3);
  hyper.niw.scale = Eigen::MatrixXd::Identity(3, 3);
  auto state = DpgmmInit(data, 4, hyper, 17);
  for (int sweep = 0; sweep < 20; ++sweep) {
    auto record = DpgmmSweep(&state, data);
    CHECK(record.n_components >= 1);
  }
  for (const auto& comp : state.components)
    CHECK(comp.gaussian.chol.diagonal().minCoeff() > 0.0);
}

TEST_CASE("train: zero iterations returns the initialization's components") {
  auto [data, labels] = SeparatedClusters(4, 60, 3, 6.0, 41);
  DpgmmHyper hyper = DpgmmHyper::FromData(data);
  auto init = DpgmmInit(data, 7, hyper, 99);
  auto trained = DpgmmTrain(data, 7, 0, hyper, 99);
  REQUIRE(trained.model.NumComponents() == init.NumComponents());
  for (int k = 0; k < init.NumComponents(); ++k) {
    CHECK(trained.model.components[k].mean.isApprox(
        init.components[k].gaussian.mean));
  }
  CHECK(trained.log.empty());
}

TEST_CASE("log-likelihood trend is non-decreasing in windowed median") {
  auto [data, labels] = SeparatedClusters(5, 300, 3, 9.0, 55);
  auto result = DpgmmTrain(data, 10, 100, DpgmmHyper::FromData(data), 23);
  REQUIRE(result.log.size() == 100);
  auto median_of = [&](int begin, int end) {
    std::vector<double> v;
    for (int i = begin; i < end; ++i)
      v.push_back(result.log[i].log_likelihood);
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  const double early = median_of(0, 50);
  const double late = median_of(50, 100);
  CHECK(late >= early);
}

TEST_CASE("posteriorgram: K = 1 gives all-ones, rows always sum to 1") {
  auto [data, labels] = SeparatedClusters(4, 50, 2, 5.0, 61);
  auto one = DpgmmTrain(data, 1, 3, DpgmmHyper::FromData(data), 5,
                        SweepOptions{.workers = 1, .propose_splits = false,
                                     .propose_merges = false});
  REQUIRE(one.model.NumComponents() == 1);
  Posteriorgram pg = ComputePosteriorgram(one.model, data.transpose());
  CHECK((pg.rows.array() == 1.0).all());

  auto many = DpgmmTrain(data, 5, 5, DpgmmHyper::FromData(data), 6);
  Posteriorgram pg2 = ComputePosteriorgram(many.model, data.transpose());
  for (Eigen::Index t = 0; t < pg2.rows.rows(); ++t) {
    CHECK(pg2.rows.row(t).sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pg2.rows.row(t).minCoeff() >= 0.0);
  }
}

TEST_CASE("posteriorgram: frame at a dominant far component is decisive") {
  DpgmmModel model;
  model.weights = {0.5, 0.5};
  GaussianParams g1, g2;
  g1.mean = Eigen::VectorXd::Zero(3);
  g1.chol = Eigen::MatrixXd::Identity(3, 3);
  g1.log_det = 0.0;
  g2 = g1;
  g2.mean = Eigen::VectorXd::Constant(3, 100.0);  // 100 sigma away
  model.components = {g1, g2};
  Eigen::MatrixXd frames(1, 3);
  frames.row(0) = g1.mean.transpose();
  Posteriorgram pg = ComputePosteriorgram(model, frames);
  CHECK(pg.rows(0, 0) > 0.99);
}

TEST_CASE("model save/load round trips through the binary format") {
  auto [data, labels] = SeparatedClusters(6, 80, 2, 6.0, 71);
  auto result = DpgmmTrain(data, 4, 5, DpgmmHyper::FromData(data), 15);
  auto dir = std::filesystem::temp_directory_path() / "phonelearn_dpgmm";
  std::filesystem::create_directories(dir);
  SaveDpgmmModel(dir / "m.pldp", result.model);
  DpgmmModel back = LoadDpgmmModel(dir / "m.pldp");
  REQUIRE(back.NumComponents() == result.model.NumComponents());
  Posteriorgram a = ComputePosteriorgram(result.model, data.transpose());
  Posteriorgram b = ComputePosteriorgram(back, data.transpose());
  CHECK(a.rows.isApprox(b.rows, 1e-12));
}

TEST_CASE("parameter posteriors are permutation-invariant given assignments") {
  auto [data, labels] = SeparatedClusters(5, 100, 1, 1.0, 81);
  Eigen::MatrixXd permuted(data.rows(), data.cols());
  Rng rng(9);
  std::vector<Eigen::Index> order(data.cols());
  for (Eigen::Index i = 0; i < data.cols(); ++i) order[i] = i;
  rng.Shuffle(&order);
  for (Eigen::Index i = 0; i < data.cols(); ++i)
    permuted.col(i) = data.col(order[i]);
  // Same point set (all frames one cluster): the NIW posterior parameters
  // must agree up to floating-point reassociation.
  NiwParams prior = DpgmmHyper::FromData(data).niw;
  NiwParams p1 = NiwPosterior(prior, SuffStats::FromColumns(data));
  NiwParams p2 = NiwPosterior(prior, SuffStats::FromColumns(permuted));
  CHECK(p1.kappa == p2.kappa);
  CHECK(p1.mean.isApprox(p2.mean, 1e-10));
  CHECK(p1.scale.isApprox(p2.scale, 1e-9));
}

TEST_CASE("worker count does not change the training trajectory") {
  auto [data, labels] = SeparatedClusters(4, 120, 2, 7.0, 91);
  DpgmmHyper hyper = DpgmmHyper::FromData(data);
  SweepOptions w1, w4;
  w1.workers = 1;
  w4.workers = 4;
  auto r1 = DpgmmTrain(data, 6, 15, hyper, 33, w1);
  auto r4 = DpgmmTrain(data, 6, 15, hyper, 33, w4);
  REQUIRE(r1.model.NumComponents() == r4.model.NumComponents());
  for (int k = 0; k < r1.model.NumComponents(); ++k) {
    CHECK(r1.model.weights[k] == r4.model.weights[k]);
    CHECK(r1.model.components[k].mean == r4.model.components[k].mean);
  }
  for (size_t i = 0; i < r1.log.size(); ++i)
    CHECK(r1.log[i].log_likelihood == r4.log[i].log_likelihood);
}

TEST_CASE("sampler posterior over K matches exhaustive enumeration") {
  // 20 one-dimensional points: 10 at -4, 10 at +4. The exact posterior over
  // the number of clusters comes from the bipartite-partition oracle; the
  // sampler's histogram must match within 0.05 total variation.
  const double a = -4.0, b = 4.0;
  const double alpha = 1.0;
  NiwParams prior = ToyPrior();
  DpPosteriorOracle oracle(10, a, 10, b, alpha, prior);

  Eigen::MatrixXd data(1, 20);
  for (int i = 0; i < 20; ++i) data(0, i) = i < 10 ? a : b;
  DpgmmHyper hyper;
  hyper.alpha = alpha;
  hyper.niw = prior;

  auto state = DpgmmInit(data, 3, hyper, 1234);
  const int burn_in = 3000, samples = 60000;
  for (int i = 0; i < burn_in; ++i) DpgmmSweep(&state, data);
  std::vector<double> histogram(21, 0.0);
  for (int i = 0; i < samples; ++i) {
    DpgmmSweep(&state, data);
    histogram[std::min(state.NumComponents(), 20)] += 1.0;
  }
  for (auto& h : histogram) h /= samples;

  double tv = 0.0;
  for (int k = 0; k <= 20; ++k)
    tv += std::abs(histogram[k] - oracle.ProbK(k));
  tv *= 0.5;
  INFO("TV distance = " << tv << ", oracle p(2) = " << oracle.ProbK(2)
                        << ", sampler p(2) = " << histogram[2]);
  CHECK(tv <= 0.05);
}
