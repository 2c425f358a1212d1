// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "urgentkit/resample.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "urgentkit/errors.hpp"

namespace urgentkit {

namespace {

// Half-width of the prototype sinc, measured in lower-rate samples. 128
// zero crossings per side put the Kaiser (beta 8.6) alias floor near -90 dB
// for the 5% transition band left by the 0.95 cutoff.
constexpr int kHalfWidth = 128;
constexpr int kPhases = 512;
constexpr double kCutoff = 0.95;
constexpr double kBeta = 8.6;

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

Waveform resample(const Waveform& w, int target_rate) {
  if (target_rate <= 0)
    raise(ErrorCode::kInvalidArgument, "target rate must be positive");
  if (w.sample_rate <= 0)
    raise(ErrorCode::kInvalidArgument, "source rate must be positive");
  if (target_rate == w.sample_rate) return w;

  const long long src_rate = w.sample_rate;
  const long long dst_rate = target_rate;
  const long long in_len = static_cast<long long>(w.size());
  // round(len * target / source), integer arithmetic
  const long long out_len =
      (2 * in_len * dst_rate + src_rate) / (2 * src_rate);

  Waveform out;
  out.sample_rate = target_rate;
  out.samples.assign(static_cast<size_t>(out_len), 0.0);
  if (in_len == 0 || out_len == 0) return out;

  const double ratio = static_cast<double>(dst_rate) / static_cast<double>(src_rate);
  const double time_scale = std::min(1.0, ratio);  // < 1 when downsampling
  const int half_len =
      static_cast<int>(std::ceil(kHalfWidth / time_scale));

  // h(x) sampled on a dense grid; x in input samples, table symmetric.
  const int table_len = half_len * kPhases + 2;
  std::vector<double> table(table_len, 0.0);
  const double i0_beta = bessel_i0(kBeta);
  for (int j = 0; j < table_len - 1; ++j) {
    const double x = static_cast<double>(j) / kPhases;
    const double u = x * time_scale;  // lower-rate samples
    if (u > kHalfWidth) continue;
    const double arg = M_PI * kCutoff * u;
    const double sinc = arg == 0.0 ? 1.0 : std::sin(arg) / arg;
    const double r = u / kHalfWidth;
    const double win = bessel_i0(kBeta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0_beta;
    table[j] = time_scale * kCutoff * sinc * win;
  }

  auto weight = [&](double x) {
    const double xi = std::fabs(x) * kPhases;
    const int j = static_cast<int>(xi);
    if (j >= table_len - 1) return 0.0;
    const double frac = xi - j;
    return table[j] + frac * (table[j + 1] - table[j]);
  };

  for (long long n = 0; n < out_len; ++n) {
    // exact rational position: t = n * src / dst input samples
    const long long t_num = n * src_rate;
    const long long i0 = t_num / dst_rate;
    const double frac = static_cast<double>(t_num % dst_rate) /
                        static_cast<double>(dst_rate);
    double acc = 0.0;
    const long long k_lo = std::max<long long>(-half_len + 1, -i0);
    const long long k_hi = std::min<long long>(half_len, in_len - 1 - i0);
    for (long long k = k_lo; k <= k_hi; ++k)
      acc += w.samples[static_cast<size_t>(i0 + k)] *
             weight(static_cast<double>(k) - frac);
    out.samples[static_cast<size_t>(n)] = acc;
  }
  return out;
}

}  // namespace urgentkit
