// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <string>

#include "urgentkit/waveform.hpp"

namespace urgentkit {

enum class WavEncoding { kPcm16, kPcm24, kFloat32 };

struct AudioFileMeta {
  std::string path;
  int channels = 0;
  int sample_rate = 0;
  WavEncoding encoding = WavEncoding::kPcm16;
  uint64_t duration_samples = 0;  // per channel
};

// RIFF/WAVE reader for pcm16, pcm24 and float32 payloads. Multichannel
// input is downmixed to mono by arithmetic mean; integer PCM is normalized
// by full scale (pcm16 divisor 32768, pcm24 divisor 8388608).
Waveform read_wav(const std::string& path);

AudioFileMeta wav_meta(const std::string& path);

// The pcm paths clamp to [-1, 1) and round to nearest; float32 is lossless.
void write_wav(const Waveform& w, const std::string& path,
               WavEncoding encoding);

}  // namespace urgentkit
