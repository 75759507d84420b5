#pragma once

#include "diffilter/signal/waveform.hpp"
#include "diffilter/util/rng.hpp"

namespace diffilter {

// Zero a contiguous mask_seconds span at a uniformly drawn start. Input must
// be strictly longer than the mask.
Waveform time_mask(const Waveform& x, double mask_seconds, Rng& rng);
MultichannelWaveform time_mask(const MultichannelWaveform& x, double mask_seconds, Rng& rng);

}  // namespace diffilter
