// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "urgentkit/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "urgentkit/dsp.hpp"

namespace urgentkit {

namespace {

constexpr double kSdrEps = 1e-12;
constexpr double kLsdEps = 1e-10;
constexpr double kMcdMelFloor = 1e-10;

void check_pair(const Waveform& ref, const Waveform& est) {
  require_same_rate(ref, est);
  require_same_length(ref, est);
  if (ref.empty()) raise(ErrorCode::kLengthMismatch, "empty signals");
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

double si_sdr(const Waveform& reference, const Waveform& estimate) {
  check_pair(reference, estimate);
  const double ref_energy = dot(reference.samples, reference.samples);
  if (ref_energy == 0.0)
    raise(ErrorCode::kZeroReference, "si_sdr reference is all zero");

  const double alpha = dot(estimate.samples, reference.samples) / ref_energy;
  double target = 0.0, error = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    const double t = alpha * reference.samples[i];
    const double e = estimate.samples[i] - t;
    target += t * t;
    error += e * e;
  }
  return std::min(kMetricCapDb, 10.0 * std::log10(target / (error + kSdrEps)));
}

double sdr(const Waveform& reference, const Waveform& estimate) {
  check_pair(reference, estimate);
  const double ref_energy = dot(reference.samples, reference.samples);
  if (ref_energy == 0.0)
    raise(ErrorCode::kZeroReference, "sdr reference is all zero");

  double error = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    const double e = estimate.samples[i] - reference.samples[i];
    error += e * e;
  }
  return std::min(kMetricCapDb,
                  10.0 * std::log10(ref_energy / (error + kSdrEps)));
}

MultiScaleMelConfig MultiScaleMelConfig::defaults() {
  MultiScaleMelConfig cfg;
  const int ffts[] = {64, 128, 256, 512, 1024, 2048};
  const int mels[] = {8, 10, 20, 40, 80, 160};
  for (int i = 0; i < 6; ++i)
    cfg.scales.push_back({ffts[i], ffts[i] / 4, mels[i]});
  return cfg;
}

double multiscale_mel_distance(const Waveform& reference,
                               const Waveform& estimate,
                               const MultiScaleMelConfig& cfg) {
  check_pair(reference, estimate);
  if (cfg.scales.empty())
    raise(ErrorCode::kInvalidArgument, "no mel scales configured");

  double total = 0.0;
  for (const MelScale& scale : cfg.scales) {
    const int n_mels = std::min(scale.n_mels, scale.fft_size / 2 - 1);
    const auto fb = mel_filterbank(n_mels, reference.sample_rate,
                                   scale.fft_size, 0.0,
                                   reference.sample_rate / 2.0);
    const StftConfig stft_cfg{scale.fft_size, scale.hop, true};
    const RowMatrix mr = mel_spectrogram(reference, stft_cfg, fb);
    const RowMatrix me = mel_spectrogram(estimate, stft_cfg, fb);

    double lin = 0.0, log_term = 0.0;
    for (size_t i = 0; i < mr.data.size(); ++i) {
      lin += std::fabs(mr.data[i] - me.data[i]);
      log_term += std::fabs(std::log(mr.data[i] + cfg.log_floor) -
                            std::log(me.data[i] + cfg.log_floor));
    }
    const double count = static_cast<double>(mr.data.size());
    total += cfg.weight_l1_lin * lin / count +
             cfg.weight_l1_log * log_term / count;
  }
  return total;
}

double log_spectral_distance(const Waveform& reference,
                             const Waveform& estimate) {
  check_pair(reference, estimate);
  const StftConfig cfg{2048, 512, true};
  const auto sr = stft(reference, cfg);
  const auto se = stft(estimate, cfg);

  double frame_acc = 0.0;
  for (int t = 0; t < sr.num_frames; ++t) {
    double bin_acc = 0.0;
    for (int k = 0; k < sr.bins(); ++k) {
      const double lr = 10.0 * std::log10(std::norm(sr.at(t, k)) + kLsdEps);
      const double le = 10.0 * std::log10(std::norm(se.at(t, k)) + kLsdEps);
      bin_acc += (lr - le) * (lr - le);
    }
    frame_acc += std::sqrt(bin_acc / sr.bins());
  }
  return frame_acc / sr.num_frames;
}

namespace {

// c1..c13 per frame via orthonormal DCT-II of the natural-log mel row
RowMatrix mel_cepstra(const Waveform& w) {
  const StftConfig cfg{2048, 512, true};
  const int n_mels = 80, n_ceps = 13;
  const auto fb =
      mel_filterbank(n_mels, w.sample_rate, cfg.fft_size, 0.0,
                     w.sample_rate / 2.0);
  const RowMatrix mel = mel_spectrogram(w, cfg, fb);

  RowMatrix ceps(mel.rows, n_ceps);
  std::vector<double> logs(n_mels);
  const double scale = std::sqrt(2.0 / n_mels);
  for (size_t t = 0; t < mel.rows; ++t) {
    for (int m = 0; m < n_mels; ++m)
      logs[m] = std::log(mel.at(t, m) + kMcdMelFloor);
    for (int k = 1; k <= n_ceps; ++k) {
      double acc = 0.0;
      for (int m = 0; m < n_mels; ++m)
        acc += logs[m] * std::cos(M_PI * k * (m + 0.5) / n_mels);
      ceps.at(t, k - 1) = scale * acc;
    }
  }
  return ceps;
}

}  // namespace

double mel_cepstral_distortion(const Waveform& reference,
                               const Waveform& estimate) {
  check_pair(reference, estimate);
  const RowMatrix cr = mel_cepstra(reference);
  const RowMatrix ce = mel_cepstra(estimate);

  double acc = 0.0;
  for (size_t t = 0; t < cr.rows; ++t) {
    double sq = 0.0;
    for (size_t k = 0; k < cr.cols; ++k) {
      const double d = cr.at(t, k) - ce.at(t, k);
      sq += d * d;
    }
    acc += std::sqrt(sq);
  }
  return (10.0 * std::sqrt(2.0) / std::log(10.0)) * acc / cr.rows;
}

double cosine_embedding_loss(std::span<const double> a,
                             std::span<const double> b) {
  if (a.size() != b.size())
    raise(ErrorCode::kShapeMismatch, "embedding dims differ");
  double aa = 0.0, bb = 0.0, ab = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    aa += a[i] * a[i];
    bb += b[i] * b[i];
    ab += a[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0)
    raise(ErrorCode::kZeroVector, "cosine loss on a zero vector");
  return 1.0 - ab / (std::sqrt(aa) * std::sqrt(bb));
}

double feature_matching_loss(const std::vector<std::vector<double>>& a,
                             const std::vector<std::vector<double>>& b) {
  if (a.size() != b.size())
    raise(ErrorCode::kShapeMismatch, "layer counts differ");
  if (a.empty()) raise(ErrorCode::kShapeMismatch, "no layers");

  double acc = 0.0;
  for (size_t layer = 0; layer < a.size(); ++layer) {
    if (a[layer].size() != b[layer].size() || a[layer].empty())
      raise(ErrorCode::kShapeMismatch, "layer shapes differ");
    double layer_acc = 0.0;
    for (size_t i = 0; i < a[layer].size(); ++i)
      layer_acc += std::fabs(a[layer][i] - b[layer][i]);
    acc += layer_acc / a[layer].size();
  }
  return acc / a.size();
}

}  // namespace urgentkit
