// dpgmm/niw.cc

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

#include "dpgmm/niw.h"

#include <cmath>
#include <iostream>
#include <numbers>

#include <Eigen/Cholesky>

#include "util/error.h"

namespace phonelearn {

SuffStats SuffStats::FromColumns(const Eigen::MatrixXd& columns) {
  SuffStats s;
  s.count = static_cast<double>(columns.cols());
  s.sum = columns.rowwise().sum();
  s.outer = Eigen::MatrixXd::Zero(columns.rows(), columns.rows());
  s.outer.selfadjointView<Eigen::Lower>().rankUpdate(columns);
  s.outer.triangularView<Eigen::StrictlyUpper>() =
      s.outer.transpose().triangularView<Eigen::StrictlyUpper>();
  return s;
}

NiwParams NiwPosterior(const NiwParams& prior, const SuffStats& stats) {
  NiwParams post;
  post.kappa = prior.kappa + stats.count;
  post.nu = prior.nu + stats.count;
  post.mean = (prior.kappa * prior.mean + stats.sum) / post.kappa;
  post.scale = prior.scale + stats.outer +
               prior.kappa * prior.mean * prior.mean.transpose() -
               post.kappa * post.mean * post.mean.transpose();
  return post;
}

double LogMultivariateGamma(int dim, double a) {
  double v = 0.25 * dim * (dim - 1) * std::log(std::numbers::pi);
  for (int j = 1; j <= dim; ++j) v += std::lgamma(a + 0.5 * (1.0 - j));
  return v;
}

namespace {

double LogDetSpd(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw NumericError("Cholesky failed on a scale matrix");
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

}  // namespace

double NiwLogMarginal(const NiwParams& prior, const SuffStats& stats) {
  const int dim = prior.Dim();
  const NiwParams post = NiwPosterior(prior, stats);
  const double n = stats.count;
  return -0.5 * n * dim * std::log(std::numbers::pi) +
         LogMultivariateGamma(dim, 0.5 * post.nu) -
         LogMultivariateGamma(dim, 0.5 * prior.nu) +
         0.5 * prior.nu * LogDetSpd(prior.scale) -
         0.5 * post.nu * LogDetSpd(post.scale) +
         0.5 * dim * (std::log(prior.kappa) - std::log(post.kappa));
}

GaussianParams SampleNiw(const NiwParams& params, Rng* rng) {
  const int dim = params.Dim();
  Eigen::MatrixXd scale = params.scale;
  Eigen::LLT<Eigen::MatrixXd> scale_llt(scale);
  if (scale_llt.info() != Eigen::Success) {
    const double ridge = 1e-6 * scale.trace() / dim;
    std::cerr << "[dpgmm] warning: scale matrix not positive definite; "
                 "adding ridge "
              << ridge << "\n";
    scale.diagonal().array() += ridge;
    scale_llt.compute(scale);
    if (scale_llt.info() != Eigen::Success)
      throw NumericError("scale matrix indefinite even after ridge");
  }

  // Bartlett: W ~ Wishart(nu, S^-1) via W = (L^-T A)(L^-T A)^T with
  // S = L L^T; then covariance = W^-1 = (L^-T A)^-T (L^-T A)^-1.
  Eigen::MatrixXd bartlett = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    bartlett(i, i) = std::sqrt(2.0 * rng->Gamma(0.5 * (params.nu - i)));
    for (int j = 0; j < i; ++j) bartlett(i, j) = rng->Gaussian();
  }
  // chol(W) = L^-T A where A is the Bartlett factor; covariance Cholesky
  // follows as the inverse transpose.
  const Eigen::MatrixXd l = scale_llt.matrixL();
  // Covariance = (L^-T A A^T L^-1)^-1 = L A^-T A^-1 L^T, so its Cholesky
  // factor is L * A^-T ... which is not lower-triangular; instead compute
  // covariance explicitly and refactor. D is small (<= 39), this is cheap.
  Eigen::MatrixXd a_inv =
      bartlett.triangularView<Eigen::Lower>().solve(
          Eigen::MatrixXd::Identity(dim, dim));
  Eigen::MatrixXd half = l * a_inv.transpose();  // covariance = half half^T
  Eigen::MatrixXd covariance = half * half.transpose();

  GaussianParams g;
  Eigen::LLT<Eigen::MatrixXd> cov_llt(covariance);
  if (cov_llt.info() != Eigen::Success) {
    const double ridge = 1e-6 * covariance.trace() / dim;
    std::cerr << "[dpgmm] warning: sampled covariance not positive "
                 "definite; adding ridge "
              << ridge << "\n";
    covariance.diagonal().array() += ridge;
    cov_llt.compute(covariance);
    if (cov_llt.info() != Eigen::Success)
      throw NumericError("sampled covariance indefinite even after ridge");
  }
  g.chol = cov_llt.matrixL();
  g.log_det = 2.0 * g.chol.diagonal().array().log().sum();

  Eigen::VectorXd z(dim);
  for (int i = 0; i < dim; ++i) z[i] = rng->Gaussian();
  g.mean = params.mean + (g.chol * z) / std::sqrt(params.kappa);
  return g;
}

GaussianParams NiwMeanGaussian(const NiwParams& params) {
  const int dim = params.Dim();
  if (params.nu <= dim + 1)
    throw NumericError("NIW mean covariance undefined for nu <= D + 1");
  Eigen::MatrixXd covariance = params.scale / (params.nu - dim - 1);
  GaussianParams g;
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success)
    throw NumericError("NIW mean covariance not positive definite");
  g.chol = llt.matrixL();
  g.log_det = 2.0 * g.chol.diagonal().array().log().sum();
  g.mean = params.mean;
  return g;
}

namespace {

// chol(L L^T + v v^T) in place, standard rank-1 update.
void CholUpdate(Eigen::MatrixXd* chol, Eigen::VectorXd v) {
  auto& l = *chol;
  const int dim = static_cast<int>(v.size());
  for (int k = 0; k < dim; ++k) {
    const double r = std::hypot(l(k, k), v[k]);
    const double c = r / l(k, k);
    const double s = v[k] / l(k, k);
    l(k, k) = r;
    for (int i = k + 1; i < dim; ++i) {
      l(i, k) = (l(i, k) + s * v[i]) / c;
      v[i] = c * v[i] - s * l(i, k);
    }
  }
}

}  // namespace

IncrementalNiw::IncrementalNiw(const NiwParams& prior)
    : dim_(prior.Dim()), kappa_(prior.kappa), nu_(prior.nu),
      mean_(prior.mean) {
  Eigen::LLT<Eigen::MatrixXd> llt(prior.scale);
  if (llt.info() != Eigen::Success)
    throw NumericError("IncrementalNiw: prior scale not positive definite");
  chol_ = llt.matrixL();
  log_det_ = 2.0 * chol_.diagonal().array().log().sum();
}

double IncrementalNiw::LogPredictive(const Eigen::VectorXd& x) const {
  // Evidence ratio f(points + x) / f(points) in closed form: adding one
  // point bumps (kappa, nu) by one and the scale by a weighted rank-1 term.
  Eigen::VectorXd w = x - mean_;
  chol_.triangularView<Eigen::Lower>().solveInPlace(w);
  const double q = (kappa_ / (kappa_ + 1.0)) * w.squaredNorm();
  const double log_det_new = log_det_ + std::log1p(q);
  return -0.5 * dim_ * std::log(std::numbers::pi) +
         std::lgamma(0.5 * (nu_ + 1.0)) -
         std::lgamma(0.5 * (nu_ + 1.0 - dim_)) + 0.5 * nu_ * log_det_ -
         0.5 * (nu_ + 1.0) * log_det_new +
         0.5 * dim_ * (std::log(kappa_) - std::log(kappa_ + 1.0));
}

void IncrementalNiw::Add(const Eigen::VectorXd& x) {
  const Eigen::VectorXd v =
      std::sqrt(kappa_ / (kappa_ + 1.0)) * (x - mean_);
  CholUpdate(&chol_, v);
  log_det_ = 2.0 * chol_.diagonal().array().log().sum();
  mean_ = (kappa_ * mean_ + x) / (kappa_ + 1.0);
  kappa_ += 1.0;
  nu_ += 1.0;
  count_ += 1.0;
}

}  // namespace phonelearn
