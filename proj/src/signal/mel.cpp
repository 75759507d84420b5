#include "diffilter/signal/mel.hpp"

#include <cmath>

#include "diffilter/signal/stft.hpp"

namespace diffilter {

namespace {
double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }
}  // namespace

Eigen::MatrixXd mel_filterbank(const MelConfig& cfg, int sample_rate) {
  const int n_bins = cfg.fft_length / 2 + 1;
  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(cfg.n_mels, n_bins);

  const double mel_lo = hz_to_mel(cfg.fmin);
  const double mel_hi = hz_to_mel(cfg.fmax);
  Eigen::VectorXd centers(cfg.n_mels + 2);
  for (int i = 0; i < cfg.n_mels + 2; ++i)
    centers[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (cfg.n_mels + 1));

  for (int k = 0; k < n_bins; ++k) {
    const double f = static_cast<double>(k) * sample_rate / cfg.fft_length;
    for (int m = 0; m < cfg.n_mels; ++m) {
      const double lo = centers[m], mid = centers[m + 1], hi = centers[m + 2];
      if (f > lo && f < hi)
        fb(m, k) = f <= mid ? (f - lo) / (mid - lo) : (hi - f) / (hi - mid);
    }
  }
  return fb;
}

Eigen::MatrixXd mel_features(const Waveform& x, const MelConfig& cfg) {
  if (x.sample_rate != kDefaultSampleRate)
    throw std::invalid_argument("mel_features: expected 16 kHz input");
  if (x.length() < cfg.win_length)
    throw std::invalid_argument("mel_features: input shorter than one window");

  StftConfig sc{cfg.win_length, cfg.hop, cfg.fft_length, Window::hann};
  Spectrogram spec = stft(x, sc);
  const Eigen::MatrixXd fb = mel_filterbank(cfg, x.sample_rate);

  const long frames = spec.num_frames();
  Eigen::MatrixXd power = spec.channels[0].cwiseAbs2();
  Eigen::MatrixXd mel = fb * power;  // n_mels x frames
  Eigen::MatrixXd out(frames, cfg.n_mels);
  for (long t = 0; t < frames; ++t)
    for (int m = 0; m < cfg.n_mels; ++m)
      out(t, m) = std::log(std::max(mel(m, t), cfg.power_floor));
  return out;
}

}  // namespace diffilter
