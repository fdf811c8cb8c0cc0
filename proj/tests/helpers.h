// tests/helpers.h

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

// Test-only oracles, independent of the implementation paths they check.

#ifndef PHONELEARN_TESTS_HELPERS_H_
#define PHONELEARN_TESTS_HELPERS_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "dpgmm/niw.h"

namespace phonelearn::testing {

// Adjusted Rand index between two labelings.
inline double AdjustedRandIndex(const std::vector<int>& a,
                                const std::vector<int>& b) {
  const size_t n = a.size();
  std::map<std::pair<int, int>, int64_t> joint;
  std::map<int, int64_t> count_a, count_b;
  for (size_t i = 0; i < n; ++i) {
    joint[{a[i], b[i]}]++;
    count_a[a[i]]++;
    count_b[b[i]]++;
  }
  auto choose2 = [](int64_t m) { return m * (m - 1) / 2.0; };
  double sum_joint = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [_, c] : joint) sum_joint += choose2(c);
  for (const auto& [_, c] : count_a) sum_a += choose2(c);
  for (const auto& [_, c] : count_b) sum_b += choose2(c);
  const double total = choose2(static_cast<int64_t>(n));
  const double expected = sum_a * sum_b / total;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (sum_joint - expected) / (max_index - expected);
}

// Exact posterior over the number of clusters for a Dirichlet-process
// Gaussian mixture on 1-D data consisting of n_a copies of value a and n_b
// copies of value b. Exploiting the duplicated values, a partition's weight
// depends only on its multiset of blocks (i, j) (i points at a, j at b), so
// exhaustive enumeration over bipartite-number partitions is feasible where
// enumerating all set partitions of 20 points would not be.
//
// p(partition | x) ~ alpha^K * prod_k Gamma(N_k) * prod_k f(block_k),
// multiplied by the number of set partitions with that block multiset:
// [n_a! / prod i_k!] [n_b! / prod j_k!] / prod_t mult_t!.
class DpPosteriorOracle {
 public:
  DpPosteriorOracle(int n_a, double value_a, int n_b, double value_b,
                    double alpha, const NiwParams& prior)
      : n_a_(n_a), n_b_(n_b), alpha_(alpha) {
    log_marginal_.assign(n_a + 1, std::vector<double>(n_b + 1, 0.0));
    for (int i = 0; i <= n_a; ++i) {
      for (int j = 0; j <= n_b; ++j) {
        if (i + j == 0) continue;
        SuffStats stats;
        stats.Init(1);
        stats.count = i + j;
        stats.sum(0) = i * value_a + j * value_b;
        stats.outer(0, 0) = i * value_a * value_a + j * value_b * value_b;
        log_marginal_[i][j] = NiwLogMarginal(prior, stats);
      }
    }
    log_by_k_.assign(n_a + n_b + 1,
                     -std::numeric_limits<double>::infinity());
    Recurse(n_a, n_b, n_a, n_b, 0, 0.0, 0, 0, 1);
    // Normalize into probabilities.
    double max_log = -std::numeric_limits<double>::infinity();
    for (double v : log_by_k_) max_log = std::max(max_log, v);
    double total = 0.0;
    prob_by_k_.resize(log_by_k_.size());
    for (size_t k = 0; k < log_by_k_.size(); ++k) {
      prob_by_k_[k] = std::exp(log_by_k_[k] - max_log);
      total += prob_by_k_[k];
    }
    for (auto& p : prob_by_k_) p /= total;
  }

  // p(K = k | data); zero beyond the data size.
  double ProbK(int k) const {
    return k >= 0 && k < static_cast<int>(prob_by_k_.size()) ? prob_by_k_[k]
                                                             : 0.0;
  }
  int MaxK() const { return n_a_ + n_b_; }

 private:
  static double LogAddExp(double x, double y) {
    if (std::isinf(x) && x < 0) return y;
    if (std::isinf(y) && y < 0) return x;
    double m = std::max(x, y);
    return m + std::log(std::exp(x - m) + std::exp(y - m));
  }

  // Blocks are generated in non-increasing lexicographic order; run_len
  // tracks the multiplicity of the current block for the 1/mult! factor.
  void Recurse(int rem_a, int rem_b, int cap_a, int cap_b, int k,
               double log_w, int prev_a, int prev_b, int run_len) {
    if (rem_a == 0 && rem_b == 0) {
      log_by_k_[k] = LogAddExp(log_by_k_[k], log_w);
      return;
    }
    for (int i = std::min(rem_a, cap_a); i >= 0; --i) {
      const int j_hi = (i == cap_a) ? std::min(rem_b, cap_b) : rem_b;
      for (int j = j_hi; j >= 0; --j) {
        if (i + j == 0) continue;
        const bool same = (i == prev_a && j == prev_b);
        const int new_run = same ? run_len + 1 : 1;
        // alpha * Gamma(N) * f(block) * binomials / running multiplicity.
        double w = log_w + std::log(alpha_) + std::lgamma(i + j) +
                   log_marginal_[i][j] + LogChoose(rem_a, i) +
                   LogChoose(rem_b, j) - std::log(new_run);
        Recurse(rem_a - i, rem_b - j, i, j, k + 1, w, i, j, new_run);
      }
    }
  }

  // log C(n, k): distributing which of the remaining identical-valued points
  // go into this block. Points of one value are exchangeable, so the product
  // of these binomials over blocks equals n! / prod(i_k!).
  static double LogChoose(int n, int k) {
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
  }

  int n_a_, n_b_;
  double alpha_;
  std::vector<std::vector<double>> log_marginal_;
  std::vector<double> log_by_k_;
  std::vector<double> prob_by_k_;
};

}  // namespace phonelearn::testing

#endif  // PHONELEARN_TESTS_HELPERS_H_
