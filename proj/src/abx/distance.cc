// abx/distance.cc

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

#include "abx/distance.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "util/error.h"

namespace phonelearn {

std::string FrameMetricName(FrameMetric metric) {
  return metric == FrameMetric::kSymmetrizedKl ? "symmetrized-kl"
                                               : "angular-cosine";
}

namespace {

double SymmetrizedKl(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  double kl_pq = 0.0, kl_qp = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double pi = std::max(p[i], kKlEpsilon);
    const double qi = std::max(q[i], kKlEpsilon);
    const double log_ratio = std::log(pi / qi);
    kl_pq += pi * log_ratio;
    kl_qp -= qi * log_ratio;
  }
  return 0.5 * (kl_pq + kl_qp);
}

double AngularCosine(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  const double np = p.norm(), nq = q.norm();
  if (np == 0.0 || nq == 0.0)
    throw DataError("angular cosine distance of a zero vector");
  const double cos_sim = std::clamp(p.dot(q) / (np * nq), -1.0, 1.0);
  return std::acos(cos_sim) / std::numbers::pi;
}

}  // namespace

double FrameDistance(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                     FrameMetric metric) {
  if (p.size() != q.size())
    throw DataError("frame distance: dimension mismatch");
  return metric == FrameMetric::kSymmetrizedKl ? SymmetrizedKl(p, q)
                                               : AngularCosine(p, q);
}

namespace {

Eigen::MatrixXd CostMatrix(const Eigen::MatrixXd& s1,
                           const Eigen::MatrixXd& s2, FrameMetric metric) {
  Eigen::MatrixXd cost(s1.rows(), s2.rows());
  for (Eigen::Index i = 0; i < s1.rows(); ++i)
    for (Eigen::Index j = 0; j < s2.rows(); ++j)
      cost(i, j) =
          FrameDistance(s1.row(i).transpose(), s2.row(j).transpose(), metric);
  return cost;
}

// dp(i, j, l): minimal summed cost of a monotone path from (0,0) to (i,j)
// with exactly l steps (l counted as visited cells). Parent codes:
// 0 none, 1 from (i-1,j), 2 from (i,j-1), 3 from (i-1,j-1).
struct LengthDp {
  int t1, t2, max_len;
  std::vector<double> best;
  std::vector<uint8_t> parent;

  LengthDp(const Eigen::MatrixXd& cost)
      : t1(static_cast<int>(cost.rows())),
        t2(static_cast<int>(cost.cols())),
        max_len(t1 + t2 - 1),
        best(static_cast<size_t>(t1) * t2 * max_len,
             std::numeric_limits<double>::infinity()),
        parent(best.size(), 0) {
    At(0, 0, 1) = cost(0, 0);
    for (int i = 0; i < t1; ++i) {
      for (int j = 0; j < t2; ++j) {
        if (i == 0 && j == 0) continue;
        // Paths to (i,j) have at least max(i,j)+1 and at most i+j+1 cells.
        for (int l = std::max(i, j) + 1; l <= i + j + 1; ++l) {
          double c = std::numeric_limits<double>::infinity();
          uint8_t from = 0;
          if (i > 0 && At(i - 1, j, l - 1) < c) {
            c = At(i - 1, j, l - 1);
            from = 1;
          }
          if (j > 0 && At(i, j - 1, l - 1) < c) {
            c = At(i, j - 1, l - 1);
            from = 2;
          }
          if (i > 0 && j > 0 && At(i - 1, j - 1, l - 1) < c) {
            c = At(i - 1, j - 1, l - 1);
            from = 3;
          }
          if (from != 0) {
            At(i, j, l) = c + cost(i, j);
            ParentAt(i, j, l) = from;
          }
        }
      }
    }
  }

  double& At(int i, int j, int l) {
    return best[(static_cast<size_t>(i) * t2 + j) * max_len + (l - 1)];
  }
  uint8_t& ParentAt(int i, int j, int l) {
    return parent[(static_cast<size_t>(i) * t2 + j) * max_len + (l - 1)];
  }

  // Minimal average cost at the terminal cell, and the achieving length.
  std::pair<double, int> BestAverage() {
    double best_avg = std::numeric_limits<double>::infinity();
    int best_len = 0;
    for (int l = std::max(t1, t2); l <= max_len; ++l) {
      double total = At(t1 - 1, t2 - 1, l);
      if (!std::isfinite(total)) continue;
      double avg = total / l;
      if (avg < best_avg) {
        best_avg = avg;
        best_len = l;
      }
    }
    return {best_avg, best_len};
  }
};

void CheckDtwInputs(const Eigen::MatrixXd& s1, const Eigen::MatrixXd& s2) {
  if (s1.rows() == 0 || s2.rows() == 0)
    throw DataError("DTW: empty sequence");
  if (s1.cols() != s2.cols())
    throw DataError("DTW: dimension mismatch");
}

}  // namespace

double DtwDistance(const Eigen::MatrixXd& s1, const Eigen::MatrixXd& s2,
                   FrameMetric metric) {
  CheckDtwInputs(s1, s2);
  LengthDp dp(CostMatrix(s1, s2, metric));
  return dp.BestAverage().first;
}

DtwAlignment DtwAlign(const Eigen::MatrixXd& s1, const Eigen::MatrixXd& s2,
                      FrameMetric metric) {
  CheckDtwInputs(s1, s2);
  LengthDp dp(CostMatrix(s1, s2, metric));
  auto [avg, len] = dp.BestAverage();
  DtwAlignment out;
  out.distance = avg;
  int i = static_cast<int>(s1.rows()) - 1;
  int j = static_cast<int>(s2.rows()) - 1;
  int l = len;
  while (true) {
    out.path.emplace_back(i, j);
    if (i == 0 && j == 0) break;
    switch (dp.ParentAt(i, j, l)) {
      case 1: --i; break;
      case 2: --j; break;
      case 3: --i; --j; break;
      default:
        throw NumericError("DTW backtrack lost the path");
    }
    --l;
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

double SegmentDistance(const Representation& r1, const Representation& r2) {
  if (r1.kind != r2.kind)
    throw DataError("segment distance: representation kind mismatch");
  if (r1.kind == Representation::Kind::kFrameSequence) {
    if (r1.metric != r2.metric)
      throw DataError("segment distance: metric mismatch");
    return DtwDistance(r1.frames, r2.frames, r1.metric);
  }
  return FrameDistance(r1.embedding, r2.embedding,
                       FrameMetric::kAngularCosine);
}

}  // namespace phonelearn
