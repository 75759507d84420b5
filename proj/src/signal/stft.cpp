#include "diffilter/signal/stft.hpp"

#include <cmath>

#include "diffilter/util/fft.hpp"

namespace diffilter {

Eigen::VectorXd make_window(Window w, int length) {
  Eigen::VectorXd win(length);
  switch (w) {
    case Window::rect:
      win.setOnes();
      break;
    case Window::hann:
      for (int n = 0; n < length; ++n)
        win[n] = 0.5 - 0.5 * std::cos(2.0 * M_PI * n / length);  // periodic
      break;
  }
  return win;
}

long stft_num_frames(long signal_length, const StftConfig& cfg) {
  if (signal_length < cfg.win_length) return 0;
  return 1 + (signal_length - cfg.win_length) / cfg.hop;
}

Spectrogram stft(const MultichannelWaveform& x, const StftConfig& cfg) {
  if (cfg.fft_length < cfg.win_length)
    throw std::invalid_argument("stft: fft_length must be >= win_length");
  if (cfg.hop <= 0 || cfg.win_length <= 0) throw std::invalid_argument("stft: bad config");
  if (x.length() < cfg.win_length)
    throw std::invalid_argument("stft: signal shorter than one window");

  const long frames = stft_num_frames(x.length(), cfg);
  const int bins = cfg.fft_length / 2 + 1;
  const Eigen::VectorXd win = make_window(cfg.window, cfg.win_length);
  RealFft& fft = fft_for_size(cfg.fft_length);

  Spectrogram out;
  out.cfg = cfg;
  out.sample_rate = x.sample_rate;
  out.signal_length = x.length();
  out.channels.reserve(x.num_channels());

  std::vector<double> buf(cfg.fft_length);
  std::vector<std::complex<double>> spec(bins);
  for (long c = 0; c < x.num_channels(); ++c) {
    Eigen::MatrixXcd ch(bins, frames);
    for (long m = 0; m < frames; ++m) {
      const long off = m * cfg.hop;
      for (int n = 0; n < cfg.win_length; ++n) buf[n] = x.channels(c, off + n) * win[n];
      std::fill(buf.begin() + cfg.win_length, buf.end(), 0.0);
      fft.forward(buf.data(), spec.data());
      for (int k = 0; k < bins; ++k) ch(k, m) = spec[k];
    }
    out.channels.push_back(std::move(ch));
  }
  return out;
}

Spectrogram stft(const Waveform& x, const StftConfig& cfg) {
  return stft(MultichannelWaveform::from_mono(x), cfg);
}

MultichannelWaveform istft(const Spectrogram& s) {
  const StftConfig& cfg = s.cfg;
  const int bins = cfg.fft_length / 2 + 1;
  if (s.num_bins() != bins) throw std::invalid_argument("istft: bin count mismatch");

  const Eigen::VectorXd win = make_window(cfg.window, cfg.win_length);
  RealFft& fft = fft_for_size(cfg.fft_length);
  const long frames = s.num_frames();
  const long T = s.signal_length > 0 ? s.signal_length
                                     : (frames - 1) * cfg.hop + cfg.win_length;

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(s.num_channels(), T);
  Eigen::VectorXd wsum = Eigen::VectorXd::Zero(T);

  std::vector<std::complex<double>> spec(bins);
  std::vector<double> buf(cfg.fft_length);
  for (long c = 0; c < s.num_channels(); ++c) {
    for (long m = 0; m < frames; ++m) {
      for (int k = 0; k < bins; ++k) spec[k] = s.channels[c](k, m);
      fft.inverse(spec.data(), buf.data());
      const long off = m * cfg.hop;
      for (int n = 0; n < cfg.win_length && off + n < T; ++n) {
        acc(c, off + n) += buf[n] / cfg.fft_length * win[n];
        if (c == 0) wsum[off + n] += win[n] * win[n];
      }
    }
  }
  for (long t = 0; t < T; ++t) {
    double d = wsum[t];
    if (d > 1e-12) acc.col(t) /= d;
  }
  return MultichannelWaveform(std::move(acc), s.sample_rate);
}

Waveform istft_mono(const Spectrogram& s) {
  MultichannelWaveform m = istft(s);
  if (m.num_channels() != 1) throw std::invalid_argument("istft_mono: spectrogram is multichannel");
  return m.channel(0);
}

}  // namespace diffilter
