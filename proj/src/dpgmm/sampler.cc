// dpgmm/sampler.cc

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

#include "dpgmm/sampler.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Cholesky>

#include "util/csv.h"
#include "util/error.h"
#include "util/parallel.h"

namespace phonelearn {

namespace {

constexpr size_t kFrameBlock = 2048;

// Whitened evaluation state for one Gaussian: log coefficient plus L^-1 so a
// block of frames reduces to one GEMM and a column-norm.
struct Whitened {
  Eigen::MatrixXd inv_chol;
  Eigen::VectorXd mean;
  double log_coef = 0.0;

  static Whitened From(const GaussianParams& g, double log_weight) {
    Whitened w;
    const int dim = g.Dim();
    w.inv_chol = g.chol.triangularView<Eigen::Lower>().solve(
        Eigen::MatrixXd::Identity(dim, dim));
    w.mean = g.mean;
    w.log_coef = log_weight - 0.5 * dim * std::log(2.0 * std::numbers::pi) -
                 0.5 * g.log_det;
    return w;
  }

  double LogDensity(const Eigen::VectorXd& x) const {
    return log_coef - 0.5 * (inv_chol * (x - mean)).squaredNorm();
  }
};

GaussianParams SampleComponentGaussian(const NiwParams& prior,
                                       const SuffStats& stats, Rng* rng) {
  return SampleNiw(NiwPosterior(prior, stats), rng);
}

// Recomputes per-component member lists from the assignment vector, in frame
// order so downstream reductions are worker-count invariant.
std::vector<std::vector<int64_t>> MemberLists(
    const std::vector<int32_t>& assignment, int k_count) {
  std::vector<std::vector<int64_t>> members(k_count);
  for (size_t i = 0; i < assignment.size(); ++i)
    members[assignment[i]].push_back(static_cast<int64_t>(i));
  return members;
}

SuffStats StatsOf(const Eigen::MatrixXd& data,
                  const std::vector<int64_t>& rows) {
  if (rows.empty()) {
    SuffStats s;
    s.Init(static_cast<int>(data.rows()));
    return s;
  }
  Eigen::MatrixXd gathered(data.rows(), rows.size());
  for (size_t c = 0; c < rows.size(); ++c)
    gathered.col(c) = data.col(rows[c]);
  return SuffStats::FromColumns(gathered);
}

void RecomputeStats(const Eigen::MatrixXd& data, DpgmmState* state,
                    const std::vector<std::vector<int64_t>>& members,
                    int workers) {
  ParallelForEach(state->components.size(), workers, [&](size_t k) {
    auto& comp = state->components[k];
    comp.stats = StatsOf(data, members[k]);
    std::vector<int64_t> left, right;
    for (int64_t i : members[k])
      (state->sub_assignment[i] == 0 ? left : right).push_back(i);
    comp.sub_stats[0] = StatsOf(data, left);
    comp.sub_stats[1] = StatsOf(data, right);
  });
}

void ResetDegenerateSubclusters(DpgmmState* state,
                                const Eigen::MatrixXd& data,
                                const std::vector<std::vector<int64_t>>& members,
                                uint64_t stream) {
  for (size_t k = 0; k < state->components.size(); ++k) {
    auto& comp = state->components[k];
    if (members[k].size() < 2) continue;
    if (comp.sub_stats[0].count > 0 && comp.sub_stats[1].count > 0) continue;
    // Fresh random binary split; per-frame streams keep this reproducible.
    for (int64_t i : members[k]) {
      Rng rng(HashCombine(stream, static_cast<uint64_t>(i)));
      state->sub_assignment[i] = rng.NextU64() & 1;
    }
    std::vector<int64_t> left, right;
    for (int64_t i : members[k])
      (state->sub_assignment[i] == 0 ? left : right).push_back(i);
    comp.sub_stats[0] = StatsOf(data, left);
    comp.sub_stats[1] = StatsOf(data, right);
  }
}

void SampleWeightsAndParams(DpgmmState* state, Rng* rng) {
  const double alpha = state->hyper.alpha;
  const size_t k_count = state->components.size();
  std::vector<double> dir_alpha(k_count + 1);
  for (size_t k = 0; k < k_count; ++k)
    dir_alpha[k] = state->components[k].stats.count;
  dir_alpha[k_count] = alpha;
  std::vector<double> weights(k_count + 1);
  rng->Dirichlet(dir_alpha, weights);

  for (size_t k = 0; k < k_count; ++k) {
    auto& comp = state->components[k];
    comp.weight = weights[k];
    comp.gaussian =
        SampleComponentGaussian(state->hyper.niw, comp.stats, rng);
    double sub_alpha[2] = {comp.sub_stats[0].count + 0.5 * alpha,
                           comp.sub_stats[1].count + 0.5 * alpha};
    double sub_w[2];
    rng->Dirichlet(std::span<const double>(sub_alpha, 2),
                   std::span<double>(sub_w, 2));
    for (int s = 0; s < 2; ++s) {
      comp.sub_weight[s] = sub_w[s];
      comp.sub_gaussian[s] =
          SampleComponentGaussian(state->hyper.niw, comp.sub_stats[s], rng);
    }
  }
}

}  // namespace

DpgmmHyper DpgmmHyper::FromData(const Eigen::MatrixXd& data, double alpha) {
  const int dim = static_cast<int>(data.rows());
  const auto n = data.cols();
  if (n < 2)
    throw DataError(
        "dpgmm: need at least 2 frames to build a data-driven prior; "
        "provide more data or an explicit prior");
  DpgmmHyper hyper;
  hyper.alpha = alpha;
  hyper.niw.kappa = 0.05;
  hyper.niw.nu = dim + 3;
  hyper.niw.mean = data.rowwise().mean();
  Eigen::VectorXd variance =
      (data.colwise() - hyper.niw.mean).rowwise().squaredNorm() /
      static_cast<double>(n - 1);
  if ((variance.array() <= 0.0).any())
    throw DataError(
        "dpgmm: some feature dimension has zero empirical variance; "
        "provide more data or a stronger (explicit) prior");
  hyper.niw.scale = variance.asDiagonal();
  return hyper;
}

DpgmmState DpgmmInit(const Eigen::MatrixXd& data, int k0,
                     const DpgmmHyper& hyper, uint64_t seed, int workers) {
  if (k0 < 1) throw UsageError("dpgmm: k0 must be >= 1");
  const auto n = data.cols();
  if (n == 0) throw DataError("dpgmm: empty data");
  if (n < k0)
    throw DataError("dpgmm: fewer frames than initial clusters");

  DpgmmState state;
  state.hyper = hyper;
  if (state.hyper.niw.mean.size() == 0)
    state.hyper = DpgmmHyper::FromData(data, hyper.alpha);
  if (state.hyper.niw.nu <= data.rows() - 1)
    throw UsageError("dpgmm: NIW nu must exceed D - 1");
  state.seed = seed;
  state.assignment.resize(n);
  state.sub_assignment.resize(n);

  const uint64_t init_stream = DeriveSeed(seed, "init");
  for (Eigen::Index i = 0; i < n; ++i) {
    Rng rng(HashCombine(init_stream, static_cast<uint64_t>(i)));
    state.assignment[i] = static_cast<int32_t>(rng.UniformInt(k0));
    state.sub_assignment[i] = rng.NextU64() & 1;
  }
  // Guarantee no initial cluster is empty: move one frame into each.
  {
    std::vector<int64_t> counts(k0, 0);
    for (auto z : state.assignment) ++counts[z];
    Eigen::Index next_frame = 0;
    for (int k = 0; k < k0; ++k) {
      if (counts[k] > 0) continue;
      while (counts[state.assignment[next_frame]] <= 1) ++next_frame;
      --counts[state.assignment[next_frame]];
      state.assignment[next_frame] = k;
      counts[k] = 1;
    }
  }

  state.components.resize(k0);
  auto members = MemberLists(state.assignment, k0);
  RecomputeStats(data, &state, members, workers);
  ResetDegenerateSubclusters(&state, data, members,
                             DeriveSeed(seed, "init-sub"));
  Rng rng(DeriveSeed(seed, "init-params"));
  SampleWeightsAndParams(&state, &rng);
  return state;
}

SweepRecord DpgmmSweep(DpgmmState* state, const Eigen::MatrixXd& data,
                       const SweepOptions& options) {
  const auto n = data.cols();
  const int k_count = state->NumComponents();
  if (k_count == 0) throw NumericError("dpgmm: no components to sweep");
  const int sweep_index = state->iteration;
  SweepRecord record;
  record.iteration = sweep_index + 1;

  // --- 1. Restricted Gibbs over (z, h) with the instantiated weights. ---
  double weight_sum = 0.0;
  for (const auto& comp : state->components) weight_sum += comp.weight;
  std::vector<Whitened> eval;
  std::vector<Whitened> sub_eval;  // 2 per component
  eval.reserve(k_count);
  sub_eval.reserve(2 * k_count);
  for (const auto& comp : state->components) {
    eval.push_back(
        Whitened::From(comp.gaussian, std::log(comp.weight / weight_sum)));
    for (int s = 0; s < 2; ++s)
      sub_eval.push_back(Whitened::From(comp.sub_gaussian[s],
                                        std::log(comp.sub_weight[s])));
  }

  const uint64_t frame_stream =
      HashCombine(DeriveSeed(state->seed, "assign"),
                  static_cast<uint64_t>(sweep_index));
  const size_t n_blocks = (static_cast<size_t>(n) + kFrameBlock - 1) /
                          kFrameBlock;
  std::vector<double> block_ll(n_blocks, 0.0);

  ParallelForBlocks(
      static_cast<size_t>(n), kFrameBlock, options.workers,
      [&](size_t block, size_t begin, size_t end) {
        const auto nb = static_cast<Eigen::Index>(end - begin);
        const auto x = data.middleCols(static_cast<Eigen::Index>(begin), nb);
        Eigen::MatrixXd logp(k_count, nb);
        Eigen::MatrixXd centered(data.rows(), nb);
        for (int k = 0; k < k_count; ++k) {
          centered = x.colwise() - eval[k].mean;
          logp.row(k) =
              (eval[k].log_coef -
               0.5 * (eval[k].inv_chol * centered).colwise().squaredNorm()
                         .array())
                  .matrix();
        }
        double ll = 0.0;
        for (Eigen::Index c = 0; c < nb; ++c) {
          const size_t frame = begin + static_cast<size_t>(c);
          Rng rng(HashCombine(frame_stream, frame));
          const double m = logp.col(c).maxCoeff();
          double total = 0.0;
          for (int k = 0; k < k_count; ++k)
            total += std::exp(logp(k, c) - m);
          ll += m + std::log(total);
          double u = rng.Uniform() * total;
          int z = k_count - 1;
          for (int k = 0; k < k_count; ++k) {
            u -= std::exp(logp(k, c) - m);
            if (u <= 0.0) {
              z = k;
              break;
            }
          }
          state->assignment[frame] = z;
          const auto& left = sub_eval[2 * z];
          const auto& right = sub_eval[2 * z + 1];
          const Eigen::VectorXd xi = x.col(c);
          const double lp0 = left.LogDensity(xi);
          const double lp1 = right.LogDensity(xi);
          const double p1 = 1.0 / (1.0 + std::exp(lp0 - lp1));
          state->sub_assignment[frame] = rng.Uniform() < p1 ? 1 : 0;
        }
        block_ll[block] = ll;
      });
  double log_likelihood = 0.0;
  for (double v : block_ll) log_likelihood += v;  // fixed block order

  // --- 2. Deterministic reduction of sufficient statistics. ---
  auto members = MemberLists(state->assignment, k_count);
  // Drop components that lost every frame; relabel assignments.
  {
    std::vector<int32_t> relabel(k_count, -1);
    int live = 0;
    for (int k = 0; k < k_count; ++k)
      if (!members[k].empty()) relabel[k] = live++;
    if (live < k_count) {
      std::vector<DpgmmComponent> kept;
      std::vector<std::vector<int64_t>> kept_members;
      kept.reserve(live);
      kept_members.reserve(live);
      for (int k = 0; k < k_count; ++k) {
        if (relabel[k] < 0) continue;
        kept.push_back(std::move(state->components[k]));
        kept_members.push_back(std::move(members[k]));
      }
      state->components = std::move(kept);
      members = std::move(kept_members);
      for (auto& z : state->assignment) z = relabel[z];
    }
  }
  RecomputeStats(data, state, members, options.workers);

  // --- 3. Anchor-pair split/merge moves (sequential allocation). ---
  // Two random anchor frames pick the move: co-clustered anchors propose a
  // split of their component, anchors in different components propose the
  // pairwise merge. Splits are built by allocating the remaining members one
  // by one with probability proportional to (current size) x (NIW posterior
  // predictive); the product of those choice probabilities is the proposal
  // density, so the collapsed Hastings ratio is exact. The reverse of a
  // merge replays the allocation against the actual membership.
  const double alpha = state->hyper.alpha;
  const NiwParams& prior = state->hyper.niw;
  const uint64_t subreset_stream =
      HashCombine(DeriveSeed(state->seed, "subreset"),
                  static_cast<uint64_t>(sweep_index));

  struct Allocation {
    double log_q = 0.0;
    std::vector<int64_t> left, right;  // includes the anchors
    SuffStats left_stats, right_stats;
  };
  // Walks members (minus anchors) in a seeded-random order. When `forced`
  // is null the allocation is sampled; otherwise it is replayed toward the
  // given side labels and only the probability is accumulated.
  auto run_allocation = [&](const std::vector<int64_t>& pool,
                            int64_t anchor_left, int64_t anchor_right,
                            const std::vector<uint8_t>* forced, Rng* rng) {
    Allocation out;
    IncrementalNiw left_niw(prior), right_niw(prior);
    left_niw.Add(data.col(anchor_left));
    right_niw.Add(data.col(anchor_right));
    out.left.push_back(anchor_left);
    out.right.push_back(anchor_right);
    std::vector<int64_t> order;
    order.reserve(pool.size());
    for (int64_t m : pool)
      if (m != anchor_left && m != anchor_right) order.push_back(m);
    rng->Shuffle(&order);
    for (size_t idx = 0; idx < order.size(); ++idx) {
      const int64_t m = order[idx];
      const Eigen::VectorXd x = data.col(m);
      const double lp_left =
          std::log(left_niw.Count()) + left_niw.LogPredictive(x);
      const double lp_right =
          std::log(right_niw.Count()) + right_niw.LogPredictive(x);
      const double max_lp = std::max(lp_left, lp_right);
      const double log_z =
          max_lp + std::log(std::exp(lp_left - max_lp) +
                            std::exp(lp_right - max_lp));
      bool go_right;
      if (forced != nullptr) {
        go_right = (*forced)[idx] != 0;
      } else {
        go_right = rng->Uniform() < std::exp(lp_right - log_z);
      }
      out.log_q += (go_right ? lp_right : lp_left) - log_z;
      if (go_right) {
        right_niw.Add(x);
        out.right.push_back(m);
      } else {
        left_niw.Add(x);
        out.left.push_back(m);
      }
    }
    out.left_stats = StatsOf(data, out.left);
    out.right_stats = StatsOf(data, out.right);
    return out;
  };

  auto log_marg = [&](const SuffStats& stats) {
    return NiwLogMarginal(prior, stats);
  };

  bool structure_changed = false;
  for (int move = 0; move < options.moves_per_sweep; ++move) {
    Rng rng(HashCombine(HashCombine(DeriveSeed(state->seed, "moves"),
                                    static_cast<uint64_t>(sweep_index)),
                        static_cast<uint64_t>(move)));
    if (n < 2) break;
    const auto anchor_a = static_cast<int64_t>(rng.UniformInt(n));
    auto anchor_b = static_cast<int64_t>(rng.UniformInt(n - 1));
    if (anchor_b >= anchor_a) ++anchor_b;
    const int32_t comp_a = state->assignment[anchor_a];
    const int32_t comp_b = state->assignment[anchor_b];

    if (comp_a == comp_b) {
      if (!options.propose_splits) continue;
      record.splits_proposed += 1;
      auto& comp = state->components[comp_a];
      Allocation alloc =
          run_allocation(members[comp_a], anchor_a, anchor_b, nullptr, &rng);
      const double n_l = alloc.left_stats.count;
      const double n_r = alloc.right_stats.count;
      const double log_target = std::log(alpha) + std::lgamma(n_l) +
                                std::lgamma(n_r) -
                                std::lgamma(comp.stats.count) +
                                log_marg(alloc.left_stats) +
                                log_marg(alloc.right_stats) -
                                log_marg(comp.stats);
      const double log_accept = log_target - alloc.log_q;
      if (!(log_accept >= 0.0 ||
            std::log(rng.Uniform() + 1e-300) < log_accept))
        continue;
      record.splits_accepted += 1;
      structure_changed = true;
      const auto new_index = static_cast<int32_t>(state->components.size());
      for (int64_t m : alloc.right) state->assignment[m] = new_index;
      for (int64_t m : members[comp_a]) {
        Rng sub_rng(HashCombine(subreset_stream, static_cast<uint64_t>(m)));
        state->sub_assignment[m] = sub_rng.NextU64() & 1;
      }
      DpgmmComponent right;
      right.stats = alloc.right_stats;
      right.weight = comp.weight * (n_r / (n_l + n_r));
      comp.stats = alloc.left_stats;
      comp.weight *= n_l / (n_l + n_r);
      std::sort(alloc.left.begin(), alloc.left.end());
      std::sort(alloc.right.begin(), alloc.right.end());
      members[comp_a] = std::move(alloc.left);
      members.push_back(std::move(alloc.right));
      state->components.push_back(std::move(right));
    } else {
      if (!options.propose_merges) continue;
      record.merges_proposed += 1;
      auto& keep = state->components[comp_a];
      auto& gone = state->components[comp_b];
      // Replay the allocation toward the actual membership to get the
      // reverse-split proposal probability.
      std::vector<int64_t> pool;
      pool.reserve(members[comp_a].size() + members[comp_b].size());
      std::vector<uint8_t> forced;
      {
        std::vector<int64_t> order_pool;
        for (int64_t m : members[comp_a]) order_pool.push_back(m);
        for (int64_t m : members[comp_b]) order_pool.push_back(m);
        std::sort(order_pool.begin(), order_pool.end());
        pool = order_pool;
      }
      // forced[] must match the shuffled visit order inside run_allocation;
      // replicate the shuffle with an identical rng stream.
      Rng replay_rng(rng.NextU64());
      Rng shuffle_probe(replay_rng);
      std::vector<int64_t> probe_order;
      probe_order.reserve(pool.size());
      for (int64_t m : pool)
        if (m != anchor_a && m != anchor_b) probe_order.push_back(m);
      shuffle_probe.Shuffle(&probe_order);
      forced.reserve(probe_order.size());
      for (int64_t m : probe_order)
        forced.push_back(state->assignment[m] == comp_b ? 1 : 0);
      Rng alloc_rng(replay_rng);
      Allocation alloc =
          run_allocation(pool, anchor_a, anchor_b, &forced, &alloc_rng);
      SuffStats merged = keep.stats;
      merged.Add(gone.stats);
      const double n_k = keep.stats.count;
      const double n_j = gone.stats.count;
      const double log_target =
          log_marg(merged) + std::lgamma(merged.count) - std::log(alpha) -
          std::lgamma(n_k) - std::lgamma(n_j) - log_marg(keep.stats) -
          log_marg(gone.stats);
      const double log_accept = log_target + alloc.log_q;
      if (!(log_accept >= 0.0 ||
            std::log(rng.Uniform() + 1e-300) < log_accept))
        continue;
      record.merges_accepted += 1;
      structure_changed = true;
      // The two former components become the merged one's sub-clusters.
      keep.sub_stats[0] = keep.stats;
      keep.sub_stats[1] = gone.stats;
      keep.sub_gaussian[0] = keep.gaussian;
      keep.sub_gaussian[1] = gone.gaussian;
      const double w = keep.weight + gone.weight;
      keep.sub_weight[0] = keep.weight / w;
      keep.sub_weight[1] = gone.weight / w;
      keep.weight = w;
      keep.stats = merged;
      for (int64_t m : members[comp_b]) {
        state->assignment[m] = comp_a;
        state->sub_assignment[m] = 1;
      }
      for (int64_t m : members[comp_a]) state->sub_assignment[m] = 0;
      members[comp_a].insert(members[comp_a].end(), members[comp_b].begin(),
                             members[comp_b].end());
      std::sort(members[comp_a].begin(), members[comp_a].end());
      members[comp_b].clear();
      // Drop the emptied component and relabel.
      std::vector<int32_t> relabel(state->components.size());
      int32_t live = 0;
      for (size_t k = 0; k < state->components.size(); ++k)
        relabel[k] = (static_cast<int32_t>(k) == comp_b) ? -1 : live++;
      state->components.erase(state->components.begin() + comp_b);
      members.erase(members.begin() + comp_b);
      for (auto& z : state->assignment) z = relabel[z];
    }
  }
  if (structure_changed)
    RecomputeStats(data, state, members, options.workers);

  // --- 4. Conditionals: degenerate sub resets, weights, parameters. ---
  ResetDegenerateSubclusters(state, data, members, subreset_stream);
  Rng param_rng(HashCombine(DeriveSeed(state->seed, "params"),
                            static_cast<uint64_t>(sweep_index)));
  SampleWeightsAndParams(state, &param_rng);

  state->iteration += 1;
  state->last_log_likelihood = log_likelihood;
  record.n_components = state->NumComponents();
  record.log_likelihood = log_likelihood;
  return record;
}

DpgmmModel ExtractModel(const DpgmmState& state) {
  DpgmmModel model;
  double total = 0.0;
  for (const auto& comp : state.components) total += comp.weight;
  for (const auto& comp : state.components) {
    model.weights.push_back(comp.weight / total);
    model.components.push_back(comp.gaussian);
  }
  return model;
}

DpgmmTrainResult DpgmmTrain(const Eigen::MatrixXd& data, int k0,
                            int iterations, const DpgmmHyper& hyper,
                            uint64_t seed, const SweepOptions& options) {
  if (iterations < 0) throw UsageError("dpgmm: negative iteration count");
  DpgmmState state = DpgmmInit(data, k0, hyper, seed, options.workers);
  DpgmmTrainResult result;
  result.log.reserve(iterations);
  for (int it = 0; it < iterations; ++it)
    result.log.push_back(DpgmmSweep(&state, data, options));
  result.model = ExtractModel(state);
  return result;
}

void WriteTrainLogCsv(const std::filesystem::path& path,
                      const std::vector<SweepRecord>& log) {
  CsvTable csv;
  csv.header = {"iteration", "n_components", "log_likelihood",
                "splits_accepted", "merges_accepted"};
  for (const auto& r : log) {
    std::ostringstream ll;
    ll << r.log_likelihood;
    csv.rows.push_back({std::to_string(r.iteration),
                        std::to_string(r.n_components), ll.str(),
                        std::to_string(r.splits_accepted),
                        std::to_string(r.merges_accepted)});
  }
  WriteCsv(path, csv);
}

}  // namespace phonelearn
