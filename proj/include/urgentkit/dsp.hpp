// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "urgentkit/matrix.hpp"
#include "urgentkit/waveform.hpp"

namespace urgentkit {

// Analysis configuration. The window is always a periodic (DFT-even) Hann,
// which gives exact COLA at hop = fft_size / 4.
struct StftConfig {
  int fft_size = 4096;
  int hop = 1024;
  bool center_padding = true;
};

struct ComplexSpectrogram {
  StftConfig config;
  size_t source_len = 0;
  int sample_rate = 0;
  int num_frames = 0;
  std::vector<std::complex<double>> data;  // num_frames x (fft_size/2+1)

  int bins() const { return config.fft_size / 2 + 1; }
  std::complex<double>& at(int frame, int bin) {
    return data[static_cast<size_t>(frame) * bins() + bin];
  }
  std::complex<double> at(int frame, int bin) const {
    return data[static_cast<size_t>(frame) * bins() + bin];
  }
};

// In-place radix-2 complex FFT; size must be a power of two. The inverse
// transform includes the 1/N scaling.
void fft_inplace(std::span<std::complex<double>> x, bool inverse);

std::vector<double> hann_window_periodic(int n);

ComplexSpectrogram stft(const Waveform& w, const StftConfig& cfg);

// Weighted overlap-add inverse with synthesis window = analysis window,
// normalized by the summed squared-window envelope. Throws
// DegenerateOverlap when that envelope falls below 1e-8 anywhere in the
// emitted region.
Waveform istft(const ComplexSpectrogram& s);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Triangular filters (unit peak) on n_mels+2 equally-mel-spaced breakpoints,
// HTK mel scale. Rows may have empty support when the band is narrower than
// one bin; callers that care should cap n_mels against fft_size.
struct MelFilterbank {
  int n_mels = 0;
  int sample_rate = 0;
  int fft_size = 0;
  double fmin = 0.0;
  double fmax = 0.0;
  std::vector<double> weights;           // n_mels x (fft_size/2+1)
  std::vector<std::pair<int, int>> support;  // per-row [lo, hi) bin range

  int bins() const { return fft_size / 2 + 1; }
  double weight(int mel, int bin) const {
    return weights[static_cast<size_t>(mel) * bins() + bin];
  }
  // mel-weighted projection of one magnitude frame
  void apply(const double* magnitude, double* out) const;
};

MelFilterbank mel_filterbank(int n_mels, int sample_rate, int fft_size,
                             double fmin_hz, double fmax_hz);

// frames x n_mels matrix of mel-weighted STFT magnitudes
RowMatrix mel_spectrogram(const Waveform& w, const StftConfig& cfg,
                          const MelFilterbank& fb);

// Linear-phase Kaiser-windowed sinc (beta = 8.6), coefficients normalized to
// unit DC gain. taps must be odd.
std::vector<double> fir_lowpass(double cutoff_hz, int sample_rate, int taps);

enum class ConvolveMode { kFull, kSame };

// FFT-based block convolution; numerically within 1e-6 of the direct form.
Waveform convolve(const Waveform& w, std::span<const double> kernel,
                  ConvolveMode mode);

}  // namespace urgentkit
