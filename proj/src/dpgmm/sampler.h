// dpgmm/sampler.h

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

#ifndef PHONELEARN_DPGMM_SAMPLER_H_
#define PHONELEARN_DPGMM_SAMPLER_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dpgmm/model.h"
#include "dpgmm/niw.h"

namespace phonelearn {

struct DpgmmHyper {
  double alpha = 1.0;  // DP concentration
  // NIW prior; when mean/scale are empty they are filled from the data
  // (mean = global mean, scale = diag of per-dimension variance,
  // kappa = 0.05, nu = D + 3).
  NiwParams niw;

  static DpgmmHyper FromData(const Eigen::MatrixXd& data /* D x N */,
                             double alpha = 1.0);
};

// One mixture component with its two sub-clusters. Sub-clusters track a
// candidate binary split of the component; split moves promote them.
struct DpgmmComponent {
  double weight = 0.0;
  GaussianParams gaussian;
  SuffStats stats;
  double sub_weight[2] = {0.5, 0.5};
  GaussianParams sub_gaussian[2];
  SuffStats sub_stats[2];
};

struct DpgmmState {
  std::vector<DpgmmComponent> components;
  std::vector<int32_t> assignment;      // frame -> component index
  std::vector<uint8_t> sub_assignment;  // frame -> 0 (left) / 1 (right)
  DpgmmHyper hyper;
  uint64_t seed = 0;
  int iteration = 0;
  double last_log_likelihood = 0.0;  // mixture data log-likelihood

  int NumComponents() const { return static_cast<int>(components.size()); }
};

struct SweepOptions {
  int workers = 0;
  bool propose_splits = true;
  bool propose_merges = true;
  // Anchor-pair split/merge proposals per sweep.
  int moves_per_sweep = 8;
};

struct SweepRecord {
  int iteration = 0;
  int n_components = 0;
  double log_likelihood = 0.0;
  int splits_proposed = 0;
  int splits_accepted = 0;
  int merges_proposed = 0;
  int merges_accepted = 0;
};

// Random partition into k0 clusters, parameters sampled from each cluster's
// NIW posterior. Deterministic given seed.
DpgmmState DpgmmInit(const Eigen::MatrixXd& data /* D x N */, int k0,
                     const DpgmmHyper& hyper, uint64_t seed, int workers = 0);

// One full iteration of the sampler:
//  1. restricted Gibbs over assignments (no new components) and the two
//     sub-cluster assignments per component, on per-frame streams;
//  2. deterministic sufficient-statistics reduction; empty components drop;
//  3. split and pairwise merge moves on random anchor pairs, the proposed
//     partition built by sequential allocation under NIW posterior
//     predictives, accepted by exact collapsed Metropolis-Hastings ratios
//     (weights and parameters are re-instantiated from their conditionals
//     right after, keeping the partially collapsed chain valid);
//  4. weights from the Dirichlet conditional, parameters from NIW
//     posteriors; degenerate sub-clusters reset.
SweepRecord DpgmmSweep(DpgmmState* state, const Eigen::MatrixXd& data,
                       const SweepOptions& options = {});

struct DpgmmTrainResult {
  DpgmmModel model;
  std::vector<SweepRecord> log;
};

// Init plus `iterations` sweeps; the exported model is the last sample.
DpgmmTrainResult DpgmmTrain(const Eigen::MatrixXd& data /* D x N */, int k0,
                            int iterations, const DpgmmHyper& hyper,
                            uint64_t seed, const SweepOptions& options = {});

// Extracts the instantiated mixture (weights renormalized over the live
// components).
DpgmmModel ExtractModel(const DpgmmState& state);

void WriteTrainLogCsv(const std::filesystem::path& path,
                      const std::vector<SweepRecord>& log);

}  // namespace phonelearn

#endif  // PHONELEARN_DPGMM_SAMPLER_H_
