// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "urgentkit/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "urgentkit/errors.hpp"

namespace urgentkit {

namespace {

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Forward twiddle table for size n: w[k] = exp(-2*pi*i*k/n), k < n/2.
// Cached per thread; tables are tiny and values are identical everywhere.
const std::vector<std::complex<double>>& twiddles(size_t n) {
  thread_local std::unordered_map<size_t, std::vector<std::complex<double>>>
      cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> w(n / 2);
  for (size_t k = 0; k < n / 2; ++k) {
    const double ang = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
    w[k] = {std::cos(ang), std::sin(ang)};
  }
  return cache.emplace(n, std::move(w)).first->second;
}

// Reflect index into [0, len) without repeating the edge sample.
size_t reflect_index(long long i, long long len) {
  if (len == 1) return 0;
  const long long period = 2 * (len - 1);
  long long j = i % period;
  if (j < 0) j += period;
  if (j >= len) j = period - j;
  return static_cast<size_t>(j);
}

}  // namespace

void fft_inplace(std::span<std::complex<double>> x, bool inverse) {
  const size_t n = x.size();
  if (n <= 1) return;
  if (!is_pow2(n)) raise(ErrorCode::kInvalidArgument, "FFT size not a power of two");

  // bit-reversal permutation
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }

  const auto& w = twiddles(n);
  for (size_t len = 2; len <= n; len <<= 1) {
    const size_t stride = n / len;
    for (size_t i = 0; i < n; i += len) {
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> tw = w[k * stride];
        if (inverse) tw = std::conj(tw);
        const std::complex<double> u = x[i + k];
        const std::complex<double> v = x[i + k + len / 2] * tw;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
      }
    }
  }

  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : x) v *= scale;
  }
}

std::vector<double> hann_window_periodic(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / n));
  return w;
}

ComplexSpectrogram stft(const Waveform& w, const StftConfig& cfg) {
  if (w.empty()) raise(ErrorCode::kEmptyPayload, "stft input is empty");
  if (!is_pow2(static_cast<size_t>(cfg.fft_size)))
    raise(ErrorCode::kInvalidArgument, "fft_size must be a power of two");
  if (cfg.hop <= 0 || cfg.hop > cfg.fft_size)
    raise(ErrorCode::kInvalidArgument, "hop must be in (0, fft_size]");

  const int n = cfg.fft_size;
  const long long len = static_cast<long long>(w.size());
  const long long pad = cfg.center_padding ? n / 2 : 0;
  const long long padded_len = len + 2 * pad;
  const int num_frames =
      padded_len >= n
          ? 1 + static_cast<int>((padded_len - n) / cfg.hop)
          : 0;
  if (num_frames == 0)
    raise(ErrorCode::kInvalidArgument, "input shorter than one analysis frame");

  const std::vector<double> window = hann_window_periodic(n);

  ComplexSpectrogram out;
  out.config = cfg;
  out.source_len = w.size();
  out.sample_rate = w.sample_rate;
  out.num_frames = num_frames;
  out.data.resize(static_cast<size_t>(num_frames) * out.bins());

  std::vector<std::complex<double>> buf(n);
  for (int t = 0; t < num_frames; ++t) {
    const long long start = static_cast<long long>(t) * cfg.hop - pad;
    for (int i = 0; i < n; ++i) {
      const long long src = start + i;
      double v;
      if (src >= 0 && src < len) {
        v = w.samples[static_cast<size_t>(src)];
      } else if (cfg.center_padding) {
        v = w.samples[reflect_index(src, len)];
      } else {
        v = 0.0;
      }
      buf[i] = {v * window[i], 0.0};
    }
    fft_inplace(buf, false);
    for (int k = 0; k <= n / 2; ++k) out.at(t, k) = buf[k];
  }
  return out;
}

Waveform istft(const ComplexSpectrogram& s) {
  const StftConfig& cfg = s.config;
  const int n = cfg.fft_size;
  const long long pad = cfg.center_padding ? n / 2 : 0;
  const std::vector<double> window = hann_window_periodic(n);

  const long long ola_len =
      static_cast<long long>(s.num_frames - 1) * cfg.hop + n;
  std::vector<double> num(ola_len, 0.0);
  std::vector<double> den(ola_len, 0.0);

  std::vector<std::complex<double>> buf(n);
  for (int t = 0; t < s.num_frames; ++t) {
    for (int k = 0; k <= n / 2; ++k) buf[k] = s.at(t, k);
    for (int k = n / 2 + 1; k < n; ++k) buf[k] = std::conj(s.at(t, n - k));
    fft_inplace(buf, true);
    const long long start = static_cast<long long>(t) * cfg.hop;
    for (int i = 0; i < n; ++i) {
      num[start + i] += buf[i].real() * window[i];
      den[start + i] += window[i] * window[i];
    }
  }

  Waveform out;
  out.sample_rate = s.sample_rate;
  out.samples.resize(s.source_len);
  for (size_t i = 0; i < s.source_len; ++i) {
    const long long j = static_cast<long long>(i) + pad;
    if (j >= ola_len || den[j] < 1e-8)
      raise(ErrorCode::kDegenerateOverlap,
            "squared-window sum below 1e-8 in the output region");
    out.samples[i] = num[j] / den[j];
  }
  return out;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

void MelFilterbank::apply(const double* magnitude, double* out) const {
  const int nb = bins();
  for (int m = 0; m < n_mels; ++m) {
    const double* row = weights.data() + static_cast<size_t>(m) * nb;
    double acc = 0.0;
    for (int k = support[m].first; k < support[m].second; ++k)
      acc += row[k] * magnitude[k];
    out[m] = acc;
  }
}

MelFilterbank mel_filterbank(int n_mels, int sample_rate, int fft_size,
                             double fmin_hz, double fmax_hz) {
  if (n_mels < 1) raise(ErrorCode::kInvalidBand, "n_mels must be >= 1");
  if (!(fmin_hz >= 0.0 && fmin_hz < fmax_hz &&
        fmax_hz <= sample_rate / 2.0 + 1e-9))
    raise(ErrorCode::kInvalidBand, "need 0 <= fmin < fmax <= rate/2");

  MelFilterbank fb;
  fb.n_mels = n_mels;
  fb.sample_rate = sample_rate;
  fb.fft_size = fft_size;
  fb.fmin = fmin_hz;
  fb.fmax = fmax_hz;
  const int nb = fb.bins();
  fb.weights.assign(static_cast<size_t>(n_mels) * nb, 0.0);
  fb.support.assign(n_mels, {0, 0});

  const double mel_lo = hz_to_mel(fmin_hz);
  const double mel_hi = hz_to_mel(fmax_hz);
  std::vector<double> edges(n_mels + 2);
  for (int i = 0; i < n_mels + 2; ++i)
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (n_mels + 1));

  const double bin_hz = static_cast<double>(sample_rate) / fft_size;
  for (int m = 0; m < n_mels; ++m) {
    const double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
    int first = nb, last = 0;
    for (int k = 0; k < nb; ++k) {
      const double f = k * bin_hz;
      double v = 0.0;
      if (f > lo && f < hi) {
        v = f <= mid ? (f - lo) / std::max(mid - lo, 1e-12)
                     : (hi - f) / std::max(hi - mid, 1e-12);
      }
      if (v > 0.0) {
        fb.weights[static_cast<size_t>(m) * nb + k] = v;
        first = std::min(first, k);
        last = std::max(last, k + 1);
      }
    }
    fb.support[m] = first < last ? std::make_pair(first, last)
                                 : std::make_pair(0, 0);
  }
  return fb;
}

RowMatrix mel_spectrogram(const Waveform& w, const StftConfig& cfg,
                          const MelFilterbank& fb) {
  const ComplexSpectrogram spec = stft(w, cfg);
  RowMatrix out(spec.num_frames, fb.n_mels);
  std::vector<double> mag(spec.bins());
  for (int t = 0; t < spec.num_frames; ++t) {
    for (int k = 0; k < spec.bins(); ++k) mag[k] = std::abs(spec.at(t, k));
    fb.apply(mag.data(), out.row(t));
  }
  return out;
}

namespace {

// zeroth-order modified Bessel function, power series
double bessel_i0(double x) {
  double sum = 1.0, term = 1.0;
  const double half_sq = x * x / 4.0;
  for (int k = 1; k < 64; ++k) {
    term *= half_sq / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace

std::vector<double> fir_lowpass(double cutoff_hz, int sample_rate, int taps) {
  if (!(cutoff_hz > 0.0 && cutoff_hz < sample_rate / 2.0))
    raise(ErrorCode::kInvalidCutoff, "cutoff must be in (0, rate/2)");
  if (taps < 1 || taps % 2 == 0)
    raise(ErrorCode::kInvalidArgument, "taps must be odd");

  const double beta = 8.6;
  const double i0_beta = bessel_i0(beta);
  const int mid = (taps - 1) / 2;
  const double fc = cutoff_hz / sample_rate;  // cycles per sample

  std::vector<double> h(taps);
  for (int i = 0; i <= mid; ++i) {
    const double x = static_cast<double>(i - mid);
    const double sinc =
        x == 0.0 ? 2.0 * fc : std::sin(2.0 * M_PI * fc * x) / (M_PI * x);
    const double r = x / mid;
    const double win =
        mid == 0 ? 1.0 : bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0_beta;
    h[i] = sinc * win;
    h[taps - 1 - i] = h[i];  // exact symmetry
  }

  double sum = 0.0;
  for (double v : h) sum += v;
  for (double& v : h) v /= sum;
  return h;
}

Waveform convolve(const Waveform& w, std::span<const double> kernel,
                  ConvolveMode mode) {
  if (kernel.empty()) raise(ErrorCode::kInvalidArgument, "empty kernel");

  const size_t n = w.size();
  const size_t m = kernel.size();
  const size_t full_len = n + m > 0 ? n + m - 1 : 0;

  std::vector<double> full(full_len, 0.0);
  if (n > 0) {
    // overlap-add block convolution
    size_t fft_n = 1;
    while (fft_n < 2 * m) fft_n <<= 1;
    fft_n = std::max<size_t>(fft_n, 4096);
    const size_t block = fft_n - m + 1;

    std::vector<std::complex<double>> kspec(fft_n, {0.0, 0.0});
    for (size_t i = 0; i < m; ++i) kspec[i] = {kernel[i], 0.0};
    fft_inplace(kspec, false);

    std::vector<std::complex<double>> buf(fft_n);
    for (size_t start = 0; start < n; start += block) {
      const size_t count = std::min(block, n - start);
      std::fill(buf.begin(), buf.end(), std::complex<double>{0.0, 0.0});
      for (size_t i = 0; i < count; ++i)
        buf[i] = {w.samples[start + i], 0.0};
      fft_inplace(buf, false);
      for (size_t i = 0; i < fft_n; ++i) buf[i] *= kspec[i];
      fft_inplace(buf, true);
      const size_t emit = std::min(count + m - 1, full_len - start);
      for (size_t i = 0; i < emit; ++i) full[start + i] += buf[i].real();
    }
  }

  Waveform out;
  out.sample_rate = w.sample_rate;
  if (mode == ConvolveMode::kFull) {
    out.samples = std::move(full);
  } else {
    const size_t offset = (m - 1) / 2;
    out.samples.assign(full.begin() + offset, full.begin() + offset + n);
  }
  return out;
}

}  // namespace urgentkit
