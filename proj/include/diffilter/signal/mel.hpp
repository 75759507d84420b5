#pragma once

#include "diffilter/signal/waveform.hpp"

namespace diffilter {

struct MelConfig {
  int n_mels = 40;
  int win_length = 400;
  int hop = 160;
  int fft_length = 512;
  double fmin = 0.0;
  double fmax = 8000.0;
  double power_floor = 1e-10;  // clamp before log so silence stays finite
};

// Triangular mel filterbank on FFT bin centers, n_mels x (fft/2+1).
Eigen::MatrixXd mel_filterbank(const MelConfig& cfg, int sample_rate);

// Log-mel energies, frames x n_mels. Requires 16 kHz input of at least one
// window. Natural log of mel-pooled power, floored at power_floor.
Eigen::MatrixXd mel_features(const Waveform& x, const MelConfig& cfg = {});

}  // namespace diffilter
