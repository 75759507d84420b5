#include "diffilter/signal/augment.hpp"

#include <cmath>

namespace diffilter {

namespace {
long mask_span(long length, int sample_rate, double mask_seconds, Rng& rng, long* start_out) {
  const long mask_len = std::lround(mask_seconds * sample_rate);
  if (length <= mask_len)
    throw std::invalid_argument("time_mask: signal must be longer than the mask");
  *start_out = static_cast<long>(rng.integer(static_cast<std::uint64_t>(length - mask_len + 1)));
  return mask_len;
}
}  // namespace

Waveform time_mask(const Waveform& x, double mask_seconds, Rng& rng) {
  long start = 0;
  const long len = mask_span(x.length(), x.sample_rate, mask_seconds, rng, &start);
  Waveform out = x;
  out.samples.segment(start, len).setZero();
  return out;
}

MultichannelWaveform time_mask(const MultichannelWaveform& x, double mask_seconds, Rng& rng) {
  long start = 0;
  const long len = mask_span(x.length(), x.sample_rate, mask_seconds, rng, &start);
  MultichannelWaveform out = x;
  out.channels.middleCols(start, len).setZero();
  return out;
}

}  // namespace diffilter
