#pragma once

#include "diffilter/signal/waveform.hpp"
#include "diffilter/util/rng.hpp"

namespace diffilter {

// Polyphase rational resampler (windowed-sinc anti-aliasing filter).
// Output length is ceil(T * up / down).
Waveform resample_rational(const Waveform& x, int up, int down);

// Resample to a new rate (rational approximation of the ratio).
Waveform resample(const Waveform& x, int new_rate);

// Tempo+pitch change by resampling: output plays the same content in
// T/factor samples at the original rate. Any positive factor; used by the
// augmentation contract below and by its inverse-factor property.
Waveform apply_speed(const Waveform& x, double factor);
MultichannelWaveform apply_speed(const MultichannelWaveform& x, double factor);

// Augmentation-facing speed perturbation; only the factors 0.9 and 1.1 are
// part of the self-supervised recipe, anything else is rejected.
Waveform speed_perturb(const Waveform& x, double factor);
MultichannelWaveform speed_perturb(const MultichannelWaveform& x, double factor);

}  // namespace diffilter
