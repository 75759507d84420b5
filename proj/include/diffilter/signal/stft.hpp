#pragma once

#include <complex>
#include <vector>

#include "diffilter/signal/waveform.hpp"

namespace diffilter {

enum class Window { hann, rect };

struct StftConfig {
  int win_length = 400;
  int hop = 160;
  int fft_length = 512;
  Window window = Window::hann;
};

// Complex STFT, one (fft/2+1) x frames matrix per channel. No padding:
// frames = 1 + floor((T - win)/hop), so istft reconstructs interior samples
// exactly and edges up to window coverage.
struct Spectrogram {
  std::vector<Eigen::MatrixXcd> channels;
  StftConfig cfg;
  int sample_rate = kDefaultSampleRate;
  long signal_length = 0;  // original T, for istft

  long num_channels() const { return static_cast<long>(channels.size()); }
  long num_bins() const { return channels.empty() ? 0 : channels[0].rows(); }
  long num_frames() const { return channels.empty() ? 0 : channels[0].cols(); }
};

Eigen::VectorXd make_window(Window w, int length);  // periodic

long stft_num_frames(long signal_length, const StftConfig& cfg);

Spectrogram stft(const MultichannelWaveform& x, const StftConfig& cfg = {});
Spectrogram stft(const Waveform& x, const StftConfig& cfg = {});

MultichannelWaveform istft(const Spectrogram& s);
Waveform istft_mono(const Spectrogram& s);

}  // namespace diffilter
