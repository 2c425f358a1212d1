// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include "urgentkit/audio_io.hpp"
#include "urgentkit/dsp.hpp"
#include "urgentkit/resample.hpp"
#include "urgentkit/rng.hpp"

using namespace urgentkit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("urgentkit_io_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

void append_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void append_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

// hand-built RIFF container so the reader is tested against raw bytes
std::vector<uint8_t> build_wav(uint16_t format, uint16_t channels,
                               uint32_t rate, uint16_t bits,
                               const std::vector<uint8_t>& payload) {
  std::vector<uint8_t> out;
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  append_u32(out, 36 + static_cast<uint32_t>(payload.size()));
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  append_u32(out, 16);
  append_u16(out, format);
  append_u16(out, channels);
  append_u32(out, rate);
  append_u32(out, rate * channels * bits / 8);
  append_u16(out, static_cast<uint16_t>(channels * bits / 8));
  append_u16(out, bits);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  append_u32(out, static_cast<uint32_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

void write_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary);
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
}

Waveform random_waveform(size_t len, int rate, uint64_t seed) {
  Rng rng(seed);
  Waveform w;
  w.sample_rate = rate;
  w.samples.resize(len);
  for (auto& v : w.samples) v = 2.0 * rng.uniform() - 1.0;
  return w;
}

// Hann-windowed band energy ratio: energy at/above cutoff over total.
double band_energy_above(const Waveform& w, double cutoff_hz) {
  size_t n = 1;
  while (n * 2 <= w.size()) n *= 2;
  std::vector<std::complex<double>> buf(n);
  for (size_t i = 0; i < n; ++i) {
    const double win = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / n));
    buf[i] = {w.samples[i] * win, 0.0};
  }
  fft_inplace(buf, false);
  double total = 0.0, above = 0.0;
  for (size_t k = 0; k <= n / 2; ++k) {
    const double f = static_cast<double>(k) * w.sample_rate / n;
    const double e = std::norm(buf[k]);
    total += e;
    if (f >= cutoff_hz) above += e;
  }
  return above / total;
}

size_t dominant_bin(const Waveform& w) {
  size_t n = 1;
  while (n * 2 <= w.size()) n *= 2;
  std::vector<std::complex<double>> buf(n);
  for (size_t i = 0; i < n; ++i) {
    const double win = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / n));
    buf[i] = {w.samples[i] * win, 0.0};
  }
  fft_inplace(buf, false);
  size_t best = 0;
  double best_mag = 0.0;
  for (size_t k = 0; k <= n / 2; ++k) {
    if (std::norm(buf[k]) > best_mag) {
      best_mag = std::norm(buf[k]);
      best = k;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("pcm16 scaling uses the 32768 divisor") {
  TempDir tmp;
  std::vector<uint8_t> payload;
  append_u16(payload, 16384);
  write_bytes(tmp.file("one.wav"), build_wav(1, 1, 22050, 16, payload));
  const auto w = read_wav(tmp.file("one.wav"));
  REQUIRE(w.size() == 1);
  CHECK(w.samples[0] == 0.5);
  CHECK(w.sample_rate == 22050);
}

TEST_CASE("stereo downmix is the channel mean") {
  TempDir tmp;
  std::vector<uint8_t> payload;
  const float left = 0.2f, right = 0.4f;
  uint32_t raw;
  std::memcpy(&raw, &left, 4);
  append_u32(payload, raw);
  std::memcpy(&raw, &right, 4);
  append_u32(payload, raw);
  write_bytes(tmp.file("st.wav"), build_wav(3, 2, 48000, 32, payload));
  const auto w = read_wav(tmp.file("st.wav"));
  REQUIRE(w.size() == 1);
  CHECK(w.samples[0] ==
        doctest::Approx((static_cast<double>(left) + right) / 2.0)
            .epsilon(1e-12));
}

TEST_CASE("float32 write/read round trip is bit exact") {
  TempDir tmp;
  Rng rng(99);
  Waveform w;
  w.sample_rate = 44100;
  w.samples.resize(4096);
  for (auto& v : w.samples)
    v = static_cast<double>(static_cast<float>(2.0 * rng.uniform() - 1.0));
  write_wav(w, tmp.file("f32.wav"), WavEncoding::kFloat32);
  const auto back = read_wav(tmp.file("f32.wav"));
  REQUIRE(back.size() == w.size());
  CHECK(back.sample_rate == 44100);
  for (size_t i = 0; i < w.size(); ++i) CHECK(back.samples[i] == w.samples[i]);
}

TEST_CASE("pcm16 clamps out-of-range samples") {
  TempDir tmp;
  Waveform w({1.5, -1.5, 0.0}, 8000);
  write_wav(w, tmp.file("clip.wav"), WavEncoding::kPcm16);
  const auto back = read_wav(tmp.file("clip.wav"));
  CHECK(back.samples[0] == 32767.0 / 32768.0);
  CHECK(back.samples[1] == -1.0);
  CHECK(back.samples[2] == 0.0);
}

TEST_CASE("pcm16 round trip quantization error bounded by 2^-15") {
  TempDir tmp;
  const auto w = random_waveform(10000, 16000, 1234);
  write_wav(w, tmp.file("q.wav"), WavEncoding::kPcm16);
  const auto back = read_wav(tmp.file("q.wav"));
  double max_err = 0.0;
  for (size_t i = 0; i < w.size(); ++i)
    max_err = std::max(max_err, std::fabs(w.samples[i] - back.samples[i]));
  CHECK(max_err <= std::pow(2.0, -15.0));
}

TEST_CASE("pcm24 round trip is tighter than pcm16") {
  TempDir tmp;
  const auto w = random_waveform(5000, 16000, 77);
  write_wav(w, tmp.file("q24.wav"), WavEncoding::kPcm24);
  const auto back = read_wav(tmp.file("q24.wav"));
  double max_err = 0.0;
  for (size_t i = 0; i < w.size(); ++i)
    max_err = std::max(max_err, std::fabs(w.samples[i] - back.samples[i]));
  CHECK(max_err <= std::pow(2.0, -23.0));
}

TEST_CASE("reader rejects malformed and unsupported input") {
  TempDir tmp;
  write_bytes(tmp.file("junk.wav"), {'n', 'o', 't', 'a', 'w', 'a', 'v'});
  CHECK_THROWS_WITH_AS((void)read_wav(tmp.file("junk.wav")),
                       doctest::Contains("MalformedContainer"), Error);

  std::vector<uint8_t> payload{0x80, 0x80};
  write_bytes(tmp.file("u8.wav"), build_wav(1, 1, 8000, 8, payload));
  CHECK_THROWS_WITH_AS((void)read_wav(tmp.file("u8.wav")),
                       doctest::Contains("UnsupportedEncoding"), Error);

  write_bytes(tmp.file("empty.wav"), build_wav(1, 1, 8000, 16, {}));
  CHECK_THROWS_WITH_AS((void)read_wav(tmp.file("empty.wav")),
                       doctest::Contains("EmptyPayload"), Error);
}

TEST_CASE("wav_meta reports consistent duration") {
  TempDir tmp;
  const auto w = random_waveform(321, 22050, 5);
  write_wav(w, tmp.file("m.wav"), WavEncoding::kPcm24);
  const auto meta = wav_meta(tmp.file("m.wav"));
  CHECK(meta.duration_samples == 321);
  CHECK(meta.channels == 1);
  CHECK(meta.sample_rate == 22050);
  CHECK(meta.encoding == WavEncoding::kPcm24);
}

TEST_CASE("resample at equal rates is the identity") {
  const auto w = random_waveform(1000, 16000, 8);
  const auto r = resample(w, 16000);
  REQUIRE(r.size() == w.size());
  for (size_t i = 0; i < w.size(); ++i) CHECK(r.samples[i] == w.samples[i]);
}

TEST_CASE("1 kHz sine survives 48k -> 24k with flat passband") {
  Waveform w;
  w.sample_rate = 48000;
  w.samples.resize(48000);
  for (size_t i = 0; i < w.size(); ++i)
    w.samples[i] = 0.5 * std::sin(2.0 * M_PI * 1000.0 * i / 48000.0);

  const auto r = resample(w, 24000);
  CHECK(r.size() == 24000);

  // FFT-peak oracle: dominant bin within one bin width of 1 kHz
  const size_t peak = dominant_bin(r);
  const double bin_hz = 24000.0 / 16384.0;
  CHECK(std::fabs(peak * bin_hz - 1000.0) <= bin_hz);

  // passband ripple < 0.1 dB, measured as RMS over an interior whole-cycle
  // span (24 samples per cycle at 24 kHz)
  double acc = 0.0;
  const size_t lo = 600, n_cycles = 900;
  for (size_t i = lo; i < lo + n_cycles * 24; ++i)
    acc += r.samples[i] * r.samples[i];
  const double amp = std::sqrt(2.0 * acc / (n_cycles * 24));
  CHECK(std::fabs(20.0 * std::log10(amp / 0.5)) < 0.1);
}

TEST_CASE("48k -> 16k -> 48k leaves no energy above 8 kHz") {
  const auto noise = random_waveform(3 * 48000, 48000, 4321);
  const auto down = resample(noise, 16000);
  CHECK(down.size() == 48000);
  const auto up = resample(down, 48000);
  CHECK(up.size() == 3 * 48000);
  CHECK(band_energy_above(up, 8000.0) <= 1e-6);
}

TEST_CASE("resampling preserves sinusoid frequency across rate pairs") {
  struct Case {
    int src, dst;
    double freq;
  };
  for (const Case& c : {Case{48000, 44100, 5000.0}, Case{16000, 48000, 3000.0},
                        Case{44100, 16000, 6000.0}}) {
    Waveform w;
    w.sample_rate = c.src;
    w.samples.resize(2 * c.src);
    for (size_t i = 0; i < w.size(); ++i)
      w.samples[i] = 0.4 * std::sin(2.0 * M_PI * c.freq * i / c.src);
    const auto r = resample(w, c.dst);
    size_t n = 1;
    while (n * 2 <= r.size()) n *= 2;
    const size_t peak = dominant_bin(r);
    const double bin_hz = static_cast<double>(c.dst) / n;
    CHECK(std::fabs(peak * bin_hz - c.freq) <= bin_hz);
  }
}

TEST_CASE("resample output length follows round(len * target / source)") {
  const auto w = random_waveform(44100, 44100, 2);
  CHECK(resample(w, 16000).size() == 16000);
  const auto odd = random_waveform(12345, 48000, 3);
  CHECK(resample(odd, 44100).size() ==
        static_cast<size_t>(std::llround(12345.0 * 44100.0 / 48000.0)));
}
