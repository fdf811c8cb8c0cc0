// nnet/optimizer.h

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

#ifndef PHONELEARN_NNET_OPTIMIZER_H_
#define PHONELEARN_NNET_OPTIMIZER_H_

#include <memory>
#include <vector>

#include "nnet/common.h"
#include "util/error.h"

namespace phonelearn {

template <typename S>
class Optimizer {
 public:
  virtual ~Optimizer() = default;
  // Applies the accumulated gradients to the parameters and clears them.
  virtual void Step(const std::vector<ParamRef<S>>& params) = 0;
};

// Zeiler's Adadelta: parameter-wise adaptive steps from running RMS of
// gradients and updates.
template <typename S>
class Adadelta : public Optimizer<S> {
 public:
  explicit Adadelta(double decay = 0.95, double epsilon = 1e-6)
      : decay_(static_cast<S>(decay)), eps_(static_cast<S>(epsilon)) {}

  void Step(const std::vector<ParamRef<S>>& params) override {
    EnsureState(params);
    for (size_t p = 0; p < params.size(); ++p) {
      auto& ref = params[p];
      auto& eg2 = grad_sq_[p];
      auto& ex2 = update_sq_[p];
      for (Eigen::Index i = 0; i < ref.size; ++i) {
        const S g = ref.grad[i];
        eg2[i] = decay_ * eg2[i] + (1 - decay_) * g * g;
        const S step = -std::sqrt((ex2[i] + eps_) / (eg2[i] + eps_)) * g;
        ex2[i] = decay_ * ex2[i] + (1 - decay_) * step * step;
        ref.value[i] += step;
        ref.grad[i] = 0;
      }
    }
  }

 private:
  void EnsureState(const std::vector<ParamRef<S>>& params) {
    if (!grad_sq_.empty()) return;
    for (const auto& ref : params) {
      grad_sq_.emplace_back(ref.size, S(0));
      update_sq_.emplace_back(ref.size, S(0));
    }
  }
  S decay_, eps_;
  std::vector<std::vector<S>> grad_sq_, update_sq_;
};

template <typename S>
class Adam : public Optimizer<S> {
 public:
  explicit Adam(double learning_rate = 0.001, double beta1 = 0.9,
                double beta2 = 0.999, double epsilon = 1e-8)
      : lr_(static_cast<S>(learning_rate)),
        beta1_(static_cast<S>(beta1)),
        beta2_(static_cast<S>(beta2)),
        eps_(static_cast<S>(epsilon)) {}

  void Step(const std::vector<ParamRef<S>>& params) override {
    EnsureState(params);
    ++t_;
    const S bc1 = 1 - std::pow(beta1_, static_cast<S>(t_));
    const S bc2 = 1 - std::pow(beta2_, static_cast<S>(t_));
    for (size_t p = 0; p < params.size(); ++p) {
      auto& ref = params[p];
      auto& m = m_[p];
      auto& v = v_[p];
      for (Eigen::Index i = 0; i < ref.size; ++i) {
        const S g = ref.grad[i];
        m[i] = beta1_ * m[i] + (1 - beta1_) * g;
        v[i] = beta2_ * v[i] + (1 - beta2_) * g * g;
        ref.value[i] -= lr_ * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps_);
        ref.grad[i] = 0;
      }
    }
  }

 private:
  void EnsureState(const std::vector<ParamRef<S>>& params) {
    if (!m_.empty()) return;
    for (const auto& ref : params) {
      m_.emplace_back(ref.size, S(0));
      v_.emplace_back(ref.size, S(0));
    }
  }
  S lr_, beta1_, beta2_, eps_;
  int64_t t_ = 0;
  std::vector<std::vector<S>> m_, v_;
};

template <typename S>
std::unique_ptr<Optimizer<S>> MakeOptimizer(const TrainSchedule& schedule) {
  if (schedule.optimizer == OptimizerKind::kAdadelta)
    return std::make_unique<Adadelta<S>>(schedule.adadelta_decay);
  return std::make_unique<Adam<S>>(schedule.adam_learning_rate);
}

}  // namespace phonelearn

#endif  // PHONELEARN_NNET_OPTIMIZER_H_
