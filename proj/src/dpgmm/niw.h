// dpgmm/niw.h

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

#ifndef PHONELEARN_DPGMM_NIW_H_
#define PHONELEARN_DPGMM_NIW_H_

#include <Eigen/Core>

#include "util/rng.h"

namespace phonelearn {

// Zero-mean-form sufficient statistics of a point set.
struct SuffStats {
  double count = 0.0;
  Eigen::VectorXd sum;    // sum of x
  Eigen::MatrixXd outer;  // sum of x x^T

  void Init(int dim) {
    count = 0.0;
    sum = Eigen::VectorXd::Zero(dim);
    outer = Eigen::MatrixXd::Zero(dim, dim);
  }
  void Add(const SuffStats& o) {
    count += o.count;
    sum += o.sum;
    outer += o.outer;
  }
  static SuffStats FromColumns(const Eigen::MatrixXd& columns);
};

// Normal-inverse-Wishart parameters: mean m with strength kappa, scale S
// with nu degrees of freedom. Requires nu > D - 1 and S symmetric positive
// definite.
struct NiwParams {
  double kappa = 0.0;
  double nu = 0.0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd scale;

  int Dim() const { return static_cast<int>(mean.size()); }
};

NiwParams NiwPosterior(const NiwParams& prior, const SuffStats& stats);

// Log evidence of the points behind `stats` under the NIW prior (the
// multivariate Student-t marginal), used by the split/merge Hastings ratios.
double NiwLogMarginal(const NiwParams& prior, const SuffStats& stats);

double LogMultivariateGamma(int dim, double a);

// A Gaussian stored with its Cholesky factor for cheap density evaluation.
struct GaussianParams {
  Eigen::VectorXd mean;
  Eigen::MatrixXd chol;  // lower L with covariance = L L^T
  double log_det = 0.0;  // log |covariance|

  // Mahalanobis part via a triangular solve; full log-density adds the
  // normalizer -(D/2) log(2 pi) - log_det/2.
  int Dim() const { return static_cast<int>(mean.size()); }
};

// Draws (mean, covariance) from the NIW distribution: covariance from the
// inverse-Wishart via Bartlett decomposition, then mean ~ N(m, cov/kappa).
// Adds a logged ridge and retries if the scale matrix is numerically
// indefinite.
GaussianParams SampleNiw(const NiwParams& params, Rng* rng);

// Posterior-expected Gaussian (mean m, covariance S/(nu - D - 1)); used for
// deterministic initialization fallbacks and tests.
GaussianParams NiwMeanGaussian(const NiwParams& params);

// NIW posterior maintained point-by-point through rank-1 Cholesky updates;
// powers the sequential-allocation split/merge proposals where each step
// needs the posterior predictive density of the next point.
class IncrementalNiw {
 public:
  explicit IncrementalNiw(const NiwParams& prior);

  // log Student-t posterior predictive of x given the points added so far.
  double LogPredictive(const Eigen::VectorXd& x) const;
  void Add(const Eigen::VectorXd& x);
  double Count() const { return count_; }

 private:
  int dim_;
  double count_ = 0.0;
  double kappa_, nu_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd chol_;  // lower Cholesky factor of the scale matrix
  double log_det_;        // log |scale|
};

}  // namespace phonelearn

#endif  // PHONELEARN_DPGMM_NIW_H_
