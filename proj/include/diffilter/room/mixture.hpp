#pragma once

#include <string>

#include "diffilter/room/room.hpp"
#include "diffilter/signal/waveform.hpp"

namespace diffilter {

// One training/evaluation example. The reference-channel decomposition
// noisy[0] == clean_reverberant_ref + noise_ref holds sample-exactly; the
// full multichannel images are kept for oracle covariance estimation.
struct MixtureExample {
  MultichannelWaveform noisy;
  Waveform clean_reverberant_ref;
  Waveform noise_ref;
  double snr_db = 0.0;
  std::string source_utterance_id;

  MultichannelWaveform speech_image;
  MultichannelWaveform noise_image;
};

// Convolve clean speech and a random noise crop with the room's two RIR
// sets, then scale the noise image so the reference-channel SNR is snr_db.
MixtureExample synthesize_mixture(const Waveform& clean, const RirSet& rirs,
                                  const Waveform& noise, double snr_db, Rng& rng);

}  // namespace diffilter
