// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <span>
#include <string>
#include <vector>

#include "urgentkit/waveform.hpp"

namespace urgentkit {

// Perfect reconstruction reports this instead of +inf so reports stay
// finite.
inline constexpr double kMetricCapDb = 100.0;

struct MetricValue {
  std::string name;
  double value = 0.0;
  bool higher_better = true;
};

// Scale-invariant SDR in dB: project the estimate onto the reference, then
// 10*log10(|a*ref|^2 / (|est - a*ref|^2 + 1e-12)), capped at kMetricCapDb.
double si_sdr(const Waveform& reference, const Waveform& estimate);

// Plain (non-scale-invariant) ratio against the raw reference.
double sdr(const Waveform& reference, const Waveform& estimate);

struct MelScale {
  int fft_size;
  int hop;
  int n_mels;
};

struct MultiScaleMelConfig {
  std::vector<MelScale> scales;
  double log_floor = 1e-5;
  double weight_l1_log = 1.0;
  double weight_l1_lin = 1.0;

  static MultiScaleMelConfig defaults();
};

// Sum over scales of weighted L1 distances between mel magnitudes and
// natural-log mel magnitudes. n_mels is capped at fft_size/2 - 1 per scale.
double multiscale_mel_distance(const Waveform& reference,
                               const Waveform& estimate,
                               const MultiScaleMelConfig& cfg);

// RMS difference of log power spectra (dB) on a 2048/512 Hann grid,
// eps = 1e-10, averaged over frames.
double log_spectral_distance(const Waveform& reference,
                             const Waveform& estimate);

// Index-aligned MCD over MFCC c1..c13 from an 80-mel log spectrogram
// (2048/512 grid, orthonormal DCT-II of ln(mel + 1e-10)):
// (10*sqrt(2)/ln 10) * mean_t ||c_ref - c_est||. No DTW; the pipeline
// guarantees time alignment.
double mel_cepstral_distortion(const Waveform& reference,
                               const Waveform& estimate);

// 1 - <a,b>/(|a||b|), in [0, 2].
double cosine_embedding_loss(std::span<const double> a,
                             std::span<const double> b);

// Mean over layers of the mean absolute difference.
double feature_matching_loss(const std::vector<std::vector<double>>& a,
                             const std::vector<std::vector<double>>& b);

}  // namespace urgentkit
