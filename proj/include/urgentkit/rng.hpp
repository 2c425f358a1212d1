// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace urgentkit {

// 64-bit FNV-1a. Seed derivation must be stable across platforms and
// languages, so the mapping is pinned here rather than left to std::hash.
inline uint64_t fnv1a64(const void* data, size_t len,
                        uint64_t state = 14695981039346656037ull) {
  const auto* p = static_cast<const uint8_t*>(data);
  for (size_t i = 0; i < len; ++i) {
    state ^= p[i];
    state *= 1099511628211ull;
  }
  return state;
}

inline uint64_t fnv1a64(uint64_t value, uint64_t state) {
  uint8_t bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<uint8_t>(value >> (8 * i));
  return fnv1a64(bytes, 8, state);
}

inline uint64_t fnv1a64(std::string_view text, uint64_t state) {
  return fnv1a64(text.data(), text.size(), state);
}

// hash(run_seed, utt_id): little-endian seed bytes followed by the id bytes.
inline uint64_t derive_seed(uint64_t run_seed, std::string_view tag) {
  return fnv1a64(tag, fnv1a64(run_seed, 14695981039346656037ull));
}

inline uint64_t derive_seed(uint64_t run_seed, std::string_view tag,
                            uint64_t index) {
  return fnv1a64(index, derive_seed(run_seed, tag));
}

// mt19937_64 with hand-rolled variate mappings. The std distributions are
// implementation-defined, which would break the bit-reproducibility contract.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n), rejection sampled
  uint64_t uniform_int(uint64_t n) {
    if (n == 0) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // standard normal, Box-Muller
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * M_PI * u2;
    spare_ = mag * std::sin(ang);
    have_spare_ = true;
    return mag * std::cos(ang);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace urgentkit
