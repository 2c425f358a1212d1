// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "urgentkit/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

namespace urgentkit {

namespace {

constexpr uint16_t kFormatPcm = 0x0001;
constexpr uint16_t kFormatFloat = 0x0003;
constexpr uint16_t kFormatExtensible = 0xFFFE;

struct FmtChunk {
  uint16_t format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits = 0;
};

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

struct ParsedWav {
  FmtChunk fmt;
  std::vector<uint8_t> payload;
};

ParsedWav parse_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::kIoFailure, "cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    raise(ErrorCode::kMalformedContainer, "not a RIFF/WAVE file: " + path);

  ParsedWav wav;
  bool have_fmt = false, have_data = false;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    char id[5] = {0};
    std::memcpy(id, bytes.data() + pos, 4);
    const uint32_t size = read_u32(bytes.data() + pos + 4);
    pos += 8;
    if (pos + size > bytes.size())
      raise(ErrorCode::kMalformedContainer, "truncated chunk in " + path);
    if (std::strcmp(id, "fmt ") == 0) {
      if (size < 16)
        raise(ErrorCode::kMalformedContainer, "short fmt chunk in " + path);
      const uint8_t* p = bytes.data() + pos;
      wav.fmt.format = read_u16(p);
      wav.fmt.channels = read_u16(p + 2);
      wav.fmt.sample_rate = read_u32(p + 4);
      wav.fmt.bits = read_u16(p + 14);
      if (wav.fmt.format == kFormatExtensible) {
        if (size < 40)
          raise(ErrorCode::kMalformedContainer,
                "short extensible fmt chunk in " + path);
        wav.fmt.format = read_u16(p + 24);  // first two bytes of SubFormat
      }
      have_fmt = true;
    } else if (std::strcmp(id, "data") == 0) {
      wav.payload.assign(bytes.begin() + pos, bytes.begin() + pos + size);
      have_data = true;
    }
    pos += size + (size & 1);  // chunks are word-aligned
  }
  if (!have_fmt || !have_data)
    raise(ErrorCode::kMalformedContainer, "missing fmt/data chunk in " + path);
  return wav;
}

WavEncoding encoding_of(const FmtChunk& fmt, const std::string& path) {
  if (fmt.format == kFormatPcm && fmt.bits == 16) return WavEncoding::kPcm16;
  if (fmt.format == kFormatPcm && fmt.bits == 24) return WavEncoding::kPcm24;
  if (fmt.format == kFormatFloat && fmt.bits == 32)
    return WavEncoding::kFloat32;
  raise(ErrorCode::kUnsupportedEncoding,
        "unsupported format/bit depth in " + path);
}

int bytes_per_sample(WavEncoding enc) {
  switch (enc) {
    case WavEncoding::kPcm16: return 2;
    case WavEncoding::kPcm24: return 3;
    case WavEncoding::kFloat32: return 4;
  }
  return 0;
}

double decode_sample(const uint8_t* p, WavEncoding enc) {
  switch (enc) {
    case WavEncoding::kPcm16: {
      const int16_t v = static_cast<int16_t>(read_u16(p));
      return v / 32768.0;
    }
    case WavEncoding::kPcm24: {
      int32_t v = static_cast<int32_t>(p[0]) | (static_cast<int32_t>(p[1]) << 8) |
                  (static_cast<int32_t>(p[2]) << 16);
      if (v & 0x800000) v |= ~0xFFFFFF;  // sign extend
      return v / 8388608.0;
    }
    case WavEncoding::kFloat32: {
      uint32_t raw = read_u32(p);
      float f;
      std::memcpy(&f, &raw, 4);
      return static_cast<double>(f);
    }
  }
  return 0.0;
}

void append_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void append_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

}  // namespace

Waveform read_wav(const std::string& path) {
  const ParsedWav wav = parse_wav(path);
  const WavEncoding enc = encoding_of(wav.fmt, path);
  if (wav.fmt.channels == 0)
    raise(ErrorCode::kMalformedContainer, "zero channels in " + path);
  if (wav.payload.empty())
    raise(ErrorCode::kEmptyPayload, "empty data chunk in " + path);

  const int bps = bytes_per_sample(enc);
  const size_t frame_bytes = static_cast<size_t>(bps) * wav.fmt.channels;
  if (wav.payload.size() % frame_bytes != 0)
    raise(ErrorCode::kMalformedContainer,
          "payload not a whole number of frames in " + path);
  const size_t frames = wav.payload.size() / frame_bytes;

  Waveform out;
  out.sample_rate = static_cast<int>(wav.fmt.sample_rate);
  out.samples.resize(frames);
  for (size_t i = 0; i < frames; ++i) {
    const uint8_t* p = wav.payload.data() + i * frame_bytes;
    double acc = 0.0;
    for (int c = 0; c < wav.fmt.channels; ++c)
      acc += decode_sample(p + c * bps, enc);
    out.samples[i] = acc / wav.fmt.channels;
  }
  return out;
}

AudioFileMeta wav_meta(const std::string& path) {
  const ParsedWav wav = parse_wav(path);
  AudioFileMeta meta;
  meta.path = path;
  meta.encoding = encoding_of(wav.fmt, path);
  meta.channels = wav.fmt.channels;
  meta.sample_rate = static_cast<int>(wav.fmt.sample_rate);
  const size_t frame_bytes =
      static_cast<size_t>(bytes_per_sample(meta.encoding)) * wav.fmt.channels;
  if (frame_bytes == 0 || wav.payload.size() % frame_bytes != 0)
    raise(ErrorCode::kMalformedContainer,
          "payload inconsistent with fmt in " + path);
  meta.duration_samples = wav.payload.size() / frame_bytes;
  return meta;
}

void write_wav(const Waveform& w, const std::string& path,
               WavEncoding encoding) {
  const int bps = bytes_per_sample(encoding);
  const uint32_t data_size = static_cast<uint32_t>(w.size() * bps);

  std::vector<uint8_t> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  append_u32(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  append_u32(out, 16);
  append_u16(out, encoding == WavEncoding::kFloat32 ? kFormatFloat : kFormatPcm);
  append_u16(out, 1);  // mono
  append_u32(out, static_cast<uint32_t>(w.sample_rate));
  append_u32(out, static_cast<uint32_t>(w.sample_rate * bps));
  append_u16(out, static_cast<uint16_t>(bps));
  append_u16(out, static_cast<uint16_t>(8 * bps));
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  append_u32(out, data_size);

  for (double x : w.samples) {
    switch (encoding) {
      case WavEncoding::kPcm16: {
        const double v = std::clamp(x, -1.0, 32767.0 / 32768.0);
        const auto q = static_cast<int32_t>(std::llround(v * 32768.0));
        append_u16(out, static_cast<uint16_t>(std::clamp(q, -32768, 32767)));
        break;
      }
      case WavEncoding::kPcm24: {
        const double v = std::clamp(x, -1.0, 8388607.0 / 8388608.0);
        const auto q = static_cast<int32_t>(std::llround(v * 8388608.0));
        const int32_t c = std::clamp(q, -8388608, 8388607);
        out.push_back(static_cast<uint8_t>(c));
        out.push_back(static_cast<uint8_t>(c >> 8));
        out.push_back(static_cast<uint8_t>(c >> 16));
        break;
      }
      case WavEncoding::kFloat32: {
        const float f = static_cast<float>(x);
        uint32_t raw;
        std::memcpy(&raw, &f, 4);
        append_u32(out, raw);
        break;
      }
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) raise(ErrorCode::kIoFailure, "cannot open " + path + " for write");
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) raise(ErrorCode::kIoFailure, "write failed for " + path);
}

}  // namespace urgentkit
