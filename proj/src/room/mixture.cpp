#include "diffilter/room/mixture.hpp"

#include <cmath>
#include <stdexcept>

#include "diffilter/util/fft.hpp"

namespace diffilter {

namespace {
// Per-channel convolution with the IR matrix, truncated to the input length.
MultichannelWaveform convolve_image(const Waveform& src, const Eigen::MatrixXd& irs,
                                    int sample_rate) {
  Eigen::MatrixXd out(irs.rows(), src.length());
  for (long c = 0; c < irs.rows(); ++c) {
    Eigen::VectorXd full = fft_convolve(src.samples, irs.row(c).transpose());
    out.row(c) = full.head(src.length()).transpose();
  }
  return MultichannelWaveform(std::move(out), sample_rate);
}
}  // namespace

MixtureExample synthesize_mixture(const Waveform& clean, const RirSet& rirs,
                                  const Waveform& noise, double snr_db, Rng& rng) {
  if (clean.samples.squaredNorm() == 0.0)
    throw std::invalid_argument("synthesize_mixture: silent clean input, SNR undefined");
  if (noise.length() < clean.length())
    throw std::invalid_argument("synthesize_mixture: noise shorter than clean signal");
  if (clean.sample_rate != rirs.sample_rate || noise.sample_rate != rirs.sample_rate)
    throw std::invalid_argument("synthesize_mixture: sample-rate mismatch");

  // random crop of the noise bank entry
  const long span = noise.length() - clean.length();
  const long off = span > 0 ? static_cast<long>(rng.integer(span + 1)) : 0;
  Waveform noise_crop(noise.samples.segment(off, clean.length()), noise.sample_rate);
  if (noise_crop.samples.squaredNorm() == 0.0)
    throw std::invalid_argument("synthesize_mixture: silent noise crop");

  MixtureExample ex;
  ex.snr_db = snr_db;
  ex.speech_image = convolve_image(clean, rirs.impulse_responses, rirs.sample_rate);
  ex.noise_image = convolve_image(noise_crop, rirs.noise_impulse_responses, rirs.sample_rate);

  const double es = ex.speech_image.channels.row(0).squaredNorm();
  const double en = ex.noise_image.channels.row(0).squaredNorm();
  if (es == 0.0 || en == 0.0)
    throw std::invalid_argument("synthesize_mixture: silent image after convolution");
  const double gain = std::sqrt(es / (en * std::pow(10.0, snr_db / 10.0)));
  ex.noise_image.channels *= gain;

  ex.noisy = MultichannelWaveform(ex.speech_image.channels + ex.noise_image.channels,
                                  rirs.sample_rate);
  ex.clean_reverberant_ref = ex.speech_image.channel(0);
  ex.noise_ref = ex.noise_image.channel(0);
  return ex;
}

}  // namespace diffilter
