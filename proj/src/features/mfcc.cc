// features/mfcc.cc

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

#include "features/mfcc.h"

#include <cmath>
#include <numbers>

#include "features/fft.h"
#include "util/error.h"

namespace phonelearn {

double HzToMel(double hz) { return 1127.0 * std::log1p(hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::exp(mel / 1127.0) - 1.0); }

void MfccConfig::Validate() const {
  if (n_cepstra < 1 || n_cepstra > n_mel_bins)
    throw UsageError("MFCC: need 1 <= n_cepstra <= n_mel_bins");
  if (pre_emphasis < 0.0 || pre_emphasis >= 1.0)
    throw UsageError("MFCC: pre_emphasis must be in [0, 1)");
  if (energy_floor <= 0.0) throw UsageError("MFCC: energy_floor must be > 0");
  if (sample_rate <= 0) throw UsageError("MFCC: bad sample rate");
  if (frame_length <= 0.0 || frame_shift <= 0.0)
    throw UsageError("MFCC: bad frame length/shift");
}

Eigen::MatrixXd FrameSignal(const std::vector<double>& samples,
                            const MfccConfig& config) {
  config.Validate();
  const int frame_samples =
      static_cast<int>(std::lround(config.frame_length * config.sample_rate));
  const int shift_samples =
      static_cast<int>(std::lround(config.frame_shift * config.sample_rate));
  const auto n = static_cast<long>(samples.size());
  if (n < frame_samples)
    throw DataError("FrameSignal: signal of " + std::to_string(n) +
                    " samples is shorter than one frame (" +
                    std::to_string(frame_samples) + ")");
  const long t_count = 1 + (n - frame_samples) / shift_samples;

  Eigen::VectorXd window(frame_samples);
  for (int i = 0; i < frame_samples; ++i) {
    double hann =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (frame_samples - 1));
    window[i] = config.window == WindowType::kPovey
                    ? std::pow(hann, 0.85)
                    : 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i /
                                             (frame_samples - 1));
  }

  Eigen::MatrixXd frames(t_count, frame_samples);
  for (long t = 0; t < t_count; ++t) {
    const long off = t * shift_samples;
    // Per-frame pre-emphasis; the first sample is emphasized against itself.
    frames(t, 0) = (samples[off] - config.pre_emphasis * samples[off]) *
                   window[0];
    for (int i = 1; i < frame_samples; ++i)
      frames(t, i) =
          (samples[off + i] - config.pre_emphasis * samples[off + i - 1]) *
          window[i];
  }
  return frames;
}

MelFilterbank::MelFilterbank(const MfccConfig& config, size_t n_fft) {
  const double nyquist = config.sample_rate / 2.0;
  const double high =
      config.high_freq <= 0.0 ? nyquist : std::min(config.high_freq, nyquist);
  const double mel_lo = HzToMel(config.low_freq);
  const double mel_hi = HzToMel(high);
  const int n_bins = config.n_mel_bins;
  const double mel_step = (mel_hi - mel_lo) / (n_bins + 1);
  const double bin_hz = static_cast<double>(config.sample_rate) /
                        static_cast<double>(n_fft);

  weights_.resize(n_bins);
  for (int m = 0; m < n_bins; ++m) {
    const double left = mel_lo + m * mel_step;
    const double center = left + mel_step;
    const double right = center + mel_step;
    std::vector<double> w;
    size_t first = 0;
    bool started = false;
    for (size_t k = 0; k <= n_fft / 2; ++k) {
      const double mel = HzToMel(k * bin_hz);
      double weight = 0.0;
      if (mel > left && mel < right)
        weight = mel <= center ? (mel - left) / (center - left)
                               : (right - mel) / (right - center);
      if (weight > 0.0) {
        if (!started) {
          first = k;
          started = true;
        }
        w.push_back(weight);
      } else if (started) {
        break;
      }
    }
    weights_[m] = {first, std::move(w)};
  }
}

std::vector<double> MelFilterbank::Apply(
    const std::vector<double>& power_spectrum) const {
  std::vector<double> energies(weights_.size(), 0.0);
  for (size_t m = 0; m < weights_.size(); ++m) {
    const auto& [first, w] = weights_[m];
    double e = 0.0;
    for (size_t i = 0; i < w.size(); ++i)
      e += w[i] * power_spectrum[first + i];
    energies[m] = e;
  }
  return energies;
}

Eigen::MatrixXd MelLogEnergies(const Eigen::MatrixXd& frames,
                               const MfccConfig& config) {
  const size_t n_fft = NextPowerOfTwo(static_cast<size_t>(frames.cols()));
  MelFilterbank bank(config, n_fft);
  Eigen::MatrixXd out(frames.rows(), config.n_mel_bins);
  std::vector<double> frame(frames.cols());
  for (long t = 0; t < frames.rows(); ++t) {
    for (long i = 0; i < frames.cols(); ++i) frame[i] = frames(t, i);
    auto power = PowerSpectrum(frame, n_fft);
    auto energies = bank.Apply(power);
    for (int m = 0; m < config.n_mel_bins; ++m)
      out(t, m) = std::log(std::max(energies[m], config.energy_floor));
  }
  return out;
}

FeatureSequence ComputeMfcc(const std::vector<double>& samples,
                            const MfccConfig& config,
                            const std::string& utterance_id) {
  const Eigen::MatrixXd frames = FrameSignal(samples, config);
  const Eigen::MatrixXd log_energies = MelLogEnergies(frames, config);

  // Orthonormal DCT-II over the mel axis.
  const int m_bins = config.n_mel_bins;
  Eigen::MatrixXd dct(config.n_cepstra, m_bins);
  for (int k = 0; k < config.n_cepstra; ++k) {
    const double scale =
        k == 0 ? std::sqrt(1.0 / m_bins) : std::sqrt(2.0 / m_bins);
    for (int m = 0; m < m_bins; ++m)
      dct(k, m) = scale * std::cos(std::numbers::pi * k * (m + 0.5) / m_bins);
  }

  FeatureSequence seq;
  seq.utterance = utterance_id;
  seq.frame_shift = config.frame_shift;
  seq.frame_length = config.frame_length;
  // Row-by-row matrix-vector products keep the accumulation order identical
  // for every frame, so identical frames give bit-identical rows.
  seq.frames.resize(log_energies.rows(), config.n_cepstra);
  for (Eigen::Index t = 0; t < log_energies.rows(); ++t)
    seq.frames.row(t) =
        (dct * log_energies.row(t).transpose()).transpose().cast<float>();
  return seq;
}

std::vector<double> SamplesToDouble(const std::vector<int16_t>& samples) {
  std::vector<double> out(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) out[i] = samples[i] / 32768.0;
  return out;
}

}  // namespace phonelearn
