// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "urgentkit/errors.hpp"

namespace urgentkit {

// Mono sample buffer. Amplitudes nominally in [-1, 1]; values outside are
// legal and simply indicate clipping risk. Immutable by convention once
// constructed, safe to share across threads.
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 0;

  Waveform() = default;
  Waveform(std::vector<double> s, int rate)
      : samples(std::move(s)), sample_rate(rate) {}

  size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

inline double energy(const Waveform& w) {
  double acc = 0.0;
  for (double v : w.samples) acc += v * v;
  return acc;
}

inline double mean_power(const Waveform& w) {
  return w.empty() ? 0.0 : energy(w) / static_cast<double>(w.size());
}

inline double rms(const Waveform& w) { return std::sqrt(mean_power(w)); }

inline double peak(const Waveform& w) {
  double m = 0.0;
  for (double v : w.samples) m = std::max(m, std::fabs(v));
  return m;
}

inline bool all_finite(const Waveform& w) {
  for (double v : w.samples)
    if (!std::isfinite(v)) return false;
  return true;
}

inline void require_same_rate(const Waveform& a, const Waveform& b) {
  if (a.sample_rate != b.sample_rate)
    raise(ErrorCode::kRateMismatch, "sample rates differ");
}

inline void require_same_length(const Waveform& a, const Waveform& b) {
  if (a.size() != b.size())
    raise(ErrorCode::kLengthMismatch, "waveform lengths differ");
}

}  // namespace urgentkit
