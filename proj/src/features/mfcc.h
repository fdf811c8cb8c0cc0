// features/mfcc.h

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

#ifndef PHONELEARN_FEATURES_MFCC_H_
#define PHONELEARN_FEATURES_MFCC_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "features/feature_seq.h"

namespace phonelearn {

enum class WindowType { kHamming, kPovey };

struct MfccConfig {
  int n_mel_bins = 23;
  int n_cepstra = 13;  // C0 included
  double pre_emphasis = 0.97;
  WindowType window = WindowType::kPovey;
  double energy_floor = 1e-10;  // applied to filterbank energies before log
  int sample_rate = 16000;
  double frame_length = 0.025;  // seconds
  double frame_shift = 0.010;
  double low_freq = 20.0;  // mel filterbank edges, Hz
  double high_freq = 0.0;  // 0 means Nyquist

  void Validate() const;
};

// Slices the signal into overlapping frames; row t is the frame starting at
// t*shift samples, after per-frame pre-emphasis and windowing.
// T = 1 + floor((N - frame_samples) / shift_samples). A signal shorter than
// one frame is an error.
Eigen::MatrixXd FrameSignal(const std::vector<double>& samples,
                            const MfccConfig& config);

// Triangular mel filterbank over the one-sided power spectrum.
class MelFilterbank {
 public:
  MelFilterbank(const MfccConfig& config, size_t n_fft);

  // Energies of each filter for one frame's power spectrum (size n_fft/2+1).
  std::vector<double> Apply(const std::vector<double>& power_spectrum) const;

  int NumBins() const { return static_cast<int>(weights_.size()); }
  // Filter weights over FFT bins (first bin index + per-bin weights).
  const std::vector<std::pair<size_t, std::vector<double>>>& Filters() const {
    return weights_;
  }

 private:
  std::vector<std::pair<size_t, std::vector<double>>> weights_;
};

// Filterbank log-energies for windowed frames; exposed for oracle checks.
Eigen::MatrixXd MelLogEnergies(const Eigen::MatrixXd& frames,
                               const MfccConfig& config);

// Full MFCC pipeline: power spectrum -> mel energies -> floored log ->
// orthonormal DCT-II -> first n_cepstra coefficients.
FeatureSequence ComputeMfcc(const std::vector<double>& samples,
                            const MfccConfig& config,
                            const std::string& utterance_id);

// 16-bit samples scaled to [-1, 1).
std::vector<double> SamplesToDouble(const std::vector<int16_t>& samples);

double HzToMel(double hz);
double MelToHz(double mel);

}  // namespace phonelearn

#endif  // PHONELEARN_FEATURES_MFCC_H_
