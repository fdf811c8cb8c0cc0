// tests/test_features.cc

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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <vector>

#include "features/archive.h"
#include "features/deltas.h"
#include "features/fft.h"
#include "features/mfcc.h"
#include "util/error.h"
#include "util/rng.h"

using namespace phonelearn;

namespace {

// Independent O(N^2) DFT; the implementation under test must match it.
std::vector<double> NaivePowerSpectrum(const std::vector<double>& frame,
                                       size_t n_fft) {
  std::vector<double> power(n_fft / 2 + 1);
  for (size_t k = 0; k <= n_fft / 2; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (size_t n = 0; n < frame.size(); ++n) {
      double angle = -2.0 * std::numbers::pi * static_cast<double>(k) *
                     static_cast<double>(n) / static_cast<double>(n_fft);
      acc += frame[n] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    power[k] = std::norm(acc);
  }
  return power;
}

std::vector<double> ToneSignal(double freq_hz, double seconds, int rate) {
  std::vector<double> x(static_cast<size_t>(seconds * rate));
  for (size_t i = 0; i < x.size(); ++i)
    x[i] = 0.5 * std::sin(2.0 * std::numbers::pi * freq_hz * i / rate);
  return x;
}

}  // namespace

TEST_CASE("framing arithmetic: 1 s at 16 kHz gives 98 frames of 400") {
  MfccConfig cfg;
  auto frames = FrameSignal(std::vector<double>(16000, 0.1), cfg);
  CHECK(frames.rows() == 98);  // 1 + (16000 - 400) / 160
  CHECK(frames.cols() == 400);
}

TEST_CASE("framing edge cases: exactly one frame, and one sample short") {
  MfccConfig cfg;
  CHECK(FrameSignal(std::vector<double>(400, 0.1), cfg).rows() == 1);
  CHECK_THROWS_AS(FrameSignal(std::vector<double>(399, 0.1), cfg),
                  DataError);
}

TEST_CASE("fft agrees with the naive DFT") {
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> frame(400);
    for (auto& v : frame) v = rng.Uniform(-1.0, 1.0);
    auto fast = PowerSpectrum(frame, 512);
    auto naive = NaivePowerSpectrum(frame, 512);
    REQUIRE(fast.size() == naive.size());
    for (size_t k = 0; k < fast.size(); ++k)
      CHECK(fast[k] ==
            doctest::Approx(naive[k]).epsilon(1e-9).scale(1.0 + naive[k]));
  }
}

TEST_CASE("all-zero signal yields constant floored MFCC frames") {
  MfccConfig cfg;
  auto seq = ComputeMfcc(std::vector<double>(16000, 0.0), cfg, "silence");
  REQUIRE(seq.NumFrames() == 98);
  REQUIRE(seq.Dim() == 13);
  // Expected row: orthonormal DCT-II of the constant log(energy_floor)
  // vector, i.e. only C0 is nonzero.
  const double log_floor = std::log(cfg.energy_floor);
  const double c0 = std::sqrt(1.0 / cfg.n_mel_bins) * cfg.n_mel_bins *
                    log_floor;
  for (Eigen::Index t = 0; t < seq.NumFrames(); ++t) {
    CHECK(seq.frames(t, 0) == doctest::Approx(c0).epsilon(1e-5));
    for (Eigen::Index d = 1; d < 13; ++d)
      CHECK(std::abs(seq.frames(t, d)) < 1e-4);
    CHECK(seq.frames.row(t) == seq.frames.row(0));
  }
  for (Eigen::Index t = 0; t < seq.NumFrames(); ++t)
    for (Eigen::Index d = 0; d < 13; ++d)
      CHECK(std::isfinite(seq.frames(t, d)));
}

TEST_CASE("pure 1 kHz tone concentrates filterbank energy near 1 kHz") {
  MfccConfig cfg;
  auto signal = ToneSignal(1000.0, 0.5, cfg.sample_rate);
  auto frames = FrameSignal(signal, cfg);
  auto log_energies = MelLogEnergies(frames, cfg);

  // Independent oracle: naive DFT -> same filterbank weights.
  MelFilterbank bank(cfg, 512);
  std::vector<double> frame0(frames.cols());
  for (Eigen::Index i = 0; i < frames.cols(); ++i) frame0[i] = frames(0, i);
  auto naive_power = NaivePowerSpectrum(frame0, 512);
  auto naive_energies = bank.Apply(naive_power);

  // Nearly all energy sits in the peak filter and its direct neighbors.
  int argmax = 0;
  for (int m = 1; m < cfg.n_mel_bins; ++m)
    if (naive_energies[m] > naive_energies[argmax]) argmax = m;
  double far_mass = 0.0, total = 0.0;
  for (int m = 0; m < cfg.n_mel_bins; ++m) {
    total += naive_energies[m];
    if (std::abs(m - argmax) > 1) far_mass += naive_energies[m];
  }
  CHECK(far_mass / total < 0.05);

  // Implementation matches the oracle within 1e-6 relative.
  for (int m = 0; m < cfg.n_mel_bins; ++m) {
    double impl = std::exp(log_energies(0, m));
    double oracle = std::max(naive_energies[m], cfg.energy_floor);
    CHECK(impl == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("filterbank energies match the naive DFT on 100 random frames") {
  MfccConfig cfg;
  Rng rng(23);
  std::vector<double> signal(400 + 99 * 160);
  for (auto& v : signal) v = rng.Uniform(-0.8, 0.8);
  auto frames = FrameSignal(signal, cfg);
  REQUIRE(frames.rows() == 100);
  auto log_energies = MelLogEnergies(frames, cfg);
  MelFilterbank bank(cfg, 512);
  std::vector<double> frame(frames.cols());
  for (Eigen::Index t = 0; t < frames.rows(); ++t) {
    for (Eigen::Index i = 0; i < frames.cols(); ++i) frame[i] = frames(t, i);
    auto oracle = bank.Apply(NaivePowerSpectrum(frame, 512));
    for (int m = 0; m < cfg.n_mel_bins; ++m) {
      double impl = std::exp(log_energies(t, m));
      CHECK(impl == doctest::Approx(std::max(oracle[m], cfg.energy_floor))
                        .epsilon(1e-6));
    }
  }
}

TEST_CASE("mfcc determinism: identical audio gives bit-identical features") {
  MfccConfig cfg;
  auto signal = ToneSignal(440.0, 0.3, cfg.sample_rate);
  auto a = ComputeMfcc(signal, cfg, "x");
  auto b = ComputeMfcc(signal, cfg, "x");
  CHECK(a.frames == b.frames);
}

TEST_CASE("deltas: constant input gives zero derivative blocks") {
  FeatureSequence seq;
  seq.utterance = "c";
  seq.frames = Eigen::MatrixXf::Constant(10, 13, 2.5f);
  auto out = AddDeltas(seq);
  CHECK(out.Dim() == 39);
  CHECK(out.NumFrames() == 10);
  CHECK(out.frames.middleCols(13, 26).cwiseAbs().maxCoeff() == 0.0f);
}

TEST_CASE("deltas: linear ramp has constant slope delta, zero delta-delta") {
  // Closed form for the +-2 regression window: d_t = slope in the interior.
  const int t_count = 12;
  FeatureSequence seq;
  seq.utterance = "ramp";
  seq.frames = Eigen::MatrixXf::Zero(t_count, 13);
  const float slope = 0.75f;
  for (int t = 0; t < t_count; ++t) seq.frames(t, 3) = slope * t;
  auto out = AddDeltas(seq);
  for (int t = 2; t < t_count - 2; ++t) {
    CHECK(out.frames(t, 13 + 3) == doctest::Approx(slope).epsilon(1e-6));
  }
  for (int t = 4; t < t_count - 4; ++t)
    CHECK(out.frames(t, 26 + 3) == doctest::Approx(0.0f).epsilon(1e-6));
}

TEST_CASE("deltas: single frame collapses the window to zero derivatives") {
  FeatureSequence seq;
  seq.utterance = "one";
  seq.frames = Eigen::MatrixXf::Random(1, 13);
  auto out = AddDeltas(seq);
  CHECK(out.NumFrames() == 1);
  CHECK(out.frames.middleCols(13, 26).cwiseAbs().maxCoeff() == 0.0f);
}

TEST_CASE("feature slice maps times to frame rows") {
  FeatureSequence seq;
  seq.utterance = "s";
  seq.frames.resize(100, 2);
  for (int t = 0; t < 100; ++t) {
    seq.frames(t, 0) = static_cast<float>(t);
    seq.frames(t, 1) = 1.0f;
  }
  // Frames centers are t*0.010 + 0.0125.
  auto mid = seq.Slice(0.20, 0.30);
  CHECK(mid.rows() == 10);
  CHECK(mid(0, 0) == doctest::Approx(19.0f));
  // A segment shorter than one frame still yields one row.
  auto tiny = seq.Slice(0.5001, 0.5002);
  CHECK(tiny.rows() == 1);
}

TEST_CASE("feature archive round trips") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "phonelearn_test_archive";
  fs::create_directories(dir);
  Rng rng(8);
  std::vector<FeatureSequence> seqs(3);
  for (int i = 0; i < 3; ++i) {
    seqs[i].utterance = "u" + std::to_string(i);
    seqs[i].frames.resize(5 + i, 39);
    for (Eigen::Index r = 0; r < seqs[i].frames.rows(); ++r)
      for (Eigen::Index c = 0; c < 39; ++c)
        seqs[i].frames(r, c) = static_cast<float>(rng.Uniform(-3, 3));
  }
  WriteFeatureArchive(dir / "f.plfa", seqs);
  auto back = ReadFeatureArchive(dir / "f.plfa");
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(back[i].utterance == seqs[i].utterance);
    CHECK(back[i].frames == seqs[i].frames);
    CHECK(back[i].frame_shift == seqs[i].frame_shift);
  }
  ExportFeatureCsv(dir / "f.csv", back);
  CHECK(fs::exists(dir / "f.csv"));
}
