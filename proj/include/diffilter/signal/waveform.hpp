#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace diffilter {

inline constexpr int kDefaultSampleRate = 16000;

// Single-channel time-domain signal. Samples are dimensionless amplitudes,
// nominally in [-1, 1]; double precision keeps the metric stack exact.
struct Waveform {
  Eigen::VectorXd samples;
  int sample_rate = kDefaultSampleRate;

  Waveform() = default;
  Waveform(Eigen::VectorXd s, int sr = kDefaultSampleRate)
      : samples(std::move(s)), sample_rate(sr) {
    if (sample_rate <= 0) throw std::invalid_argument("Waveform: sample_rate must be > 0");
  }

  long length() const { return static_cast<long>(samples.size()); }
  double duration() const { return static_cast<double>(length()) / sample_rate; }
  bool finite() const { return samples.allFinite(); }
};

// C x T multichannel signal; rows are channels. Channel 0 is the pipeline's
// reference channel.
struct MultichannelWaveform {
  Eigen::MatrixXd channels;  // C x T
  int sample_rate = kDefaultSampleRate;

  MultichannelWaveform() = default;
  MultichannelWaveform(Eigen::MatrixXd c, int sr = kDefaultSampleRate)
      : channels(std::move(c)), sample_rate(sr) {
    if (sample_rate <= 0)
      throw std::invalid_argument("MultichannelWaveform: sample_rate must be > 0");
    if (channels.rows() < 1)
      throw std::invalid_argument("MultichannelWaveform: need at least one channel");
  }

  long num_channels() const { return static_cast<long>(channels.rows()); }
  long length() const { return static_cast<long>(channels.cols()); }
  double duration() const { return static_cast<double>(length()) / sample_rate; }
  bool finite() const { return channels.allFinite(); }

  Waveform channel(long c) const {
    if (c < 0 || c >= num_channels())
      throw std::out_of_range("MultichannelWaveform: channel index out of range");
    return Waveform(channels.row(c).transpose(), sample_rate);
  }

  static MultichannelWaveform from_mono(const Waveform& w) {
    Eigen::MatrixXd m(1, w.length());
    m.row(0) = w.samples.transpose();
    return MultichannelWaveform(std::move(m), w.sample_rate);
  }
};

}  // namespace diffilter
