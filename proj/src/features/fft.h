// features/fft.h

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

#ifndef PHONELEARN_FEATURES_FFT_H_
#define PHONELEARN_FEATURES_FFT_H_

#include <complex>
#include <cstddef>
#include <vector>

namespace phonelearn {

// In-place iterative radix-2 FFT; data.size() must be a power of two.
void Fft(std::vector<std::complex<double>>* data);

size_t NextPowerOfTwo(size_t n);

// One-sided power spectrum |X_k|^2, k = 0..n_fft/2, of a real frame
// zero-padded to n_fft (power of two).
std::vector<double> PowerSpectrum(const std::vector<double>& frame,
                                  size_t n_fft);

}  // namespace phonelearn

#endif  // PHONELEARN_FEATURES_FFT_H_
