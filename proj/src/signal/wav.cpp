#include "diffilter/signal/wav.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace diffilter {

namespace {

struct ChunkHeader {
  char id[4];
  std::uint32_t size;
};

std::uint16_t rd_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t rd_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0] | (p[1] << 8) | (p[2] << 16) |
                                    (static_cast<std::uint32_t>(p[3]) << 24));
}

void wr_u16(std::ofstream& f, std::uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>(v >> 8)};
  f.write(reinterpret_cast<char*>(b), 2);
}
void wr_u32(std::ofstream& f, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  f.write(reinterpret_cast<char*>(b), 4);
}

}  // namespace

MultichannelWaveform read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_wav: cannot open " + path);

  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw std::runtime_error("read_wav: not a RIFF/WAVE file: " + path);

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* p = bytes.data() + pos;
    std::uint32_t csize = rd_u32(p + 4);
    if (std::memcmp(p, "fmt ", 4) == 0 && csize >= 16) {
      format = rd_u16(p + 8);
      channels = rd_u16(p + 10);
      sample_rate = rd_u32(p + 12);
      bits = rd_u16(p + 22);
    } else if (std::memcmp(p, "data", 4) == 0) {
      data = p + 8;
      data_size = csize;
    }
    pos += 8 + csize + (csize & 1);  // chunks are word-aligned
  }

  if (!data) throw std::runtime_error("read_wav: missing data chunk: " + path);
  if (channels == 0 || sample_rate == 0)
    throw std::runtime_error("read_wav: missing fmt chunk: " + path);

  // format 0xFFFE (extensible) carries the real tag in the extension; we only
  // accept plain PCM16 and float32 layouts either way.
  bool is_float = (format == 3) || (format == 0xFFFE && bits == 32);
  bool is_pcm16 = (format == 1 && bits == 16) || (format == 0xFFFE && bits == 16);
  if (!is_float && !is_pcm16)
    throw std::runtime_error("read_wav: unsupported format (want PCM16 or float32): " + path);

  std::size_t bytes_per_sample = bits / 8;
  if (data + data_size > bytes.data() + bytes.size())
    data_size = static_cast<std::uint32_t>(bytes.data() + bytes.size() - data);
  std::size_t n_frames = data_size / (bytes_per_sample * channels);

  Eigen::MatrixXd out(channels, n_frames);
  if (is_pcm16) {
    for (std::size_t t = 0; t < n_frames; ++t)
      for (int c = 0; c < channels; ++c) {
        const unsigned char* s = data + (t * channels + c) * 2;
        auto v = static_cast<std::int16_t>(rd_u16(s));
        out(c, static_cast<long>(t)) = static_cast<double>(v) / 32768.0;
      }
  } else {
    for (std::size_t t = 0; t < n_frames; ++t)
      for (int c = 0; c < channels; ++c) {
        float v;
        std::memcpy(&v, data + (t * channels + c) * 4, 4);
        out(c, static_cast<long>(t)) = static_cast<double>(v);
      }
  }
  return MultichannelWaveform(std::move(out), static_cast<int>(sample_rate));
}

Waveform read_wav_mono(const std::string& path) {
  MultichannelWaveform m = read_wav(path);
  if (m.num_channels() != 1)
    throw std::runtime_error("read_wav_mono: file has " + std::to_string(m.num_channels()) +
                             " channels: " + path);
  return m.channel(0);
}

void write_wav(const std::string& path, const MultichannelWaveform& w, WavFormat fmt) {
  if (!w.finite()) throw std::invalid_argument("write_wav: non-finite samples");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("write_wav: cannot open " + path);

  const auto channels = static_cast<std::uint16_t>(w.num_channels());
  const auto n_frames = static_cast<std::uint32_t>(w.length());
  const std::uint16_t bits = fmt == WavFormat::pcm16 ? 16 : 32;
  const std::uint32_t data_size = n_frames * channels * (bits / 8);

  f.write("RIFF", 4);
  wr_u32(f, 36 + data_size);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  wr_u32(f, 16);
  wr_u16(f, fmt == WavFormat::pcm16 ? 1 : 3);
  wr_u16(f, channels);
  wr_u32(f, static_cast<std::uint32_t>(w.sample_rate));
  wr_u32(f, static_cast<std::uint32_t>(w.sample_rate) * channels * (bits / 8));
  wr_u16(f, static_cast<std::uint16_t>(channels * (bits / 8)));
  wr_u16(f, bits);
  f.write("data", 4);
  wr_u32(f, data_size);

  if (fmt == WavFormat::pcm16) {
    for (std::uint32_t t = 0; t < n_frames; ++t)
      for (int c = 0; c < channels; ++c) {
        long q = std::lrint(w.channels(c, t) * 32768.0);
        q = std::max(-32768L, std::min(32767L, q));
        wr_u16(f, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
      }
  } else {
    for (std::uint32_t t = 0; t < n_frames; ++t)
      for (int c = 0; c < channels; ++c) {
        auto v = static_cast<float>(w.channels(c, t));
        std::uint32_t u;
        std::memcpy(&u, &v, 4);
        wr_u32(f, u);
      }
  }
  if (!f) throw std::runtime_error("write_wav: write failed: " + path);
}

void write_wav(const std::string& path, const Waveform& w, WavFormat fmt) {
  write_wav(path, MultichannelWaveform::from_mono(w), fmt);
}

}  // namespace diffilter
