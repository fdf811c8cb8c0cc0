// util/rng.h

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

#ifndef PHONELEARN_UTIL_RNG_H_
#define PHONELEARN_UTIL_RNG_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace phonelearn {

// One splitmix64 step; also used as a 64-bit mixer.
uint64_t SplitMix64(uint64_t* state);

// Order-sensitive combine of two 64-bit values.
uint64_t HashCombine(uint64_t a, uint64_t b);

// FNV-1a over bytes; stable across platforms.
uint64_t Fnv1a64(std::string_view bytes);

// Stage seeds are derived from one experiment seed plus a stage name so that
// stages can rerun independently with identical streams.
uint64_t DeriveSeed(uint64_t seed, std::string_view stage);

// xoshiro256++ seeded through splitmix64. Self-contained so streams are
// bit-identical across standard libraries. Cheap enough to construct
// per-item in parallel loops, which keeps results worker-count invariant.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t NextU64();
  // Uniform in [0, 1).
  double Uniform();
  double Uniform(double lo, double hi);
  // Uniform integer in [0, n), n > 0.
  uint64_t UniformInt(uint64_t n);
  // Standard normal (Marsaglia polar, one value cached).
  double Gaussian();
  // Gamma(shape, 1), shape > 0 (Marsaglia-Tsang, with the boost for shape<1).
  double Gamma(double shape);
  // Dirichlet over the given concentrations; writes into out.
  void Dirichlet(std::span<const double> alpha, std::span<double> out);

  template <typename T>
  void Shuffle(std::vector<T>* v) {
    for (size_t i = v->size(); i > 1; --i) {
      size_t j = UniformInt(i);
      std::swap((*v)[i - 1], (*v)[j]);
    }
  }

 private:
  uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace phonelearn

#endif  // PHONELEARN_UTIL_RNG_H_
