#include "diffilter/signal/resample.hpp"

#include <cmath>
#include <numeric>

namespace diffilter {

namespace {

// Blackman-windowed sinc low-pass at the up*fs grid, cutoff just under
// pi/max(up,down), unity passband gain after the `up` compensation.
Eigen::VectorXd design_lowpass(int up, int down, int zeros_per_side = 16) {
  const int m = std::max(up, down);
  const double cutoff = 0.92 / m;  // cycles per upsampled sample, in (0, 0.5)
  const int half = zeros_per_side * m;
  const int taps = 2 * half + 1;
  Eigen::VectorXd h(taps);
  for (int i = 0; i < taps; ++i) {
    const int n = i - half;
    const double x = 2.0 * M_PI * cutoff * n;
    const double sinc = n == 0 ? 1.0 : std::sin(x) / x;
    const double w =
        0.42 - 0.5 * std::cos(2.0 * M_PI * i / (taps - 1)) + 0.08 * std::cos(4.0 * M_PI * i / (taps - 1));
    h[i] = 2.0 * cutoff * sinc * w;
  }
  h *= static_cast<double>(up) / h.sum();  // unity DC gain after zero-stuffing
  return h;
}

}  // namespace

Waveform resample_rational(const Waveform& x, int up, int down) {
  if (up <= 0 || down <= 0) throw std::invalid_argument("resample_rational: bad ratio");
  if (x.length() == 0) return Waveform(Eigen::VectorXd(), x.sample_rate);
  int g = std::gcd(up, down);
  up /= g;
  down /= g;
  if (up == 1 && down == 1) return x;

  Eigen::VectorXd h = design_lowpass(up, down);
  const int half = (static_cast<int>(h.size()) - 1) / 2;
  const long T = x.length();
  const long out_len = (T * up + down - 1) / down;  // ceil

  Eigen::VectorXd y(out_len);
  for (long m = 0; m < out_len; ++m) {
    // position on the upsampled grid, filter centered at u
    const long u = m * down;
    double acc = 0.0;
    // h index j such that u - n*up = j - half  =>  n = (u + half - j)/up
    // iterate over input samples n covered by the filter support
    long n_lo = (u - half + up - 1) / up;
    if (u - half < 0) n_lo = 0;
    long n_hi = (u + half) / up;
    if (n_hi >= T) n_hi = T - 1;
    for (long n = n_lo; n <= n_hi; ++n) {
      const long j = u - n * up + half;
      if (j >= 0 && j < h.size()) acc += h[j] * x.samples[n];
    }
    y[m] = acc;
  }
  return Waveform(std::move(y), x.sample_rate);
}

Waveform resample(const Waveform& x, int new_rate) {
  if (new_rate <= 0) throw std::invalid_argument("resample: bad rate");
  if (new_rate == x.sample_rate) return x;
  int g = std::gcd(new_rate, x.sample_rate);
  Waveform y = resample_rational(x, new_rate / g, x.sample_rate / g);
  y.sample_rate = new_rate;
  return y;
}

namespace {
// Small-denominator rational approximation of 1/factor for the polyphase grid.
std::pair<int, int> speed_ratio(double factor) {
  int best_up = 1, best_down = 1;
  double best_err = 1e9;
  for (int down = 1; down <= 64; ++down) {
    int upc = static_cast<int>(std::lround(down / factor));
    if (upc < 1) continue;
    double err = std::abs(static_cast<double>(upc) / down - 1.0 / factor);
    if (err < best_err - 1e-15) {
      best_err = err;
      best_up = upc;
      best_down = down;
    }
    if (best_err < 1e-12) break;
  }
  return {best_up, best_down};
}
}  // namespace

Waveform apply_speed(const Waveform& x, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("apply_speed: factor must be positive");
  auto [up, down] = speed_ratio(factor);
  Waveform y = resample_rational(x, up, down);
  y.sample_rate = x.sample_rate;  // same clock; content compressed/stretched
  return y;
}

MultichannelWaveform apply_speed(const MultichannelWaveform& x, double factor) {
  MultichannelWaveform out;
  out.sample_rate = x.sample_rate;
  for (long c = 0; c < x.num_channels(); ++c) {
    Waveform ch = apply_speed(x.channel(c), factor);
    if (c == 0) out.channels.resize(x.num_channels(), ch.length());
    out.channels.row(c) = ch.samples.transpose();
  }
  return out;
}

Waveform speed_perturb(const Waveform& x, double factor) {
  if (factor != 0.9 && factor != 1.1)
    throw std::invalid_argument("speed_perturb: factor must be 0.9 or 1.1");
  return apply_speed(x, factor);
}

MultichannelWaveform speed_perturb(const MultichannelWaveform& x, double factor) {
  if (factor != 0.9 && factor != 1.1)
    throw std::invalid_argument("speed_perturb: factor must be 0.9 or 1.1");
  return apply_speed(x, factor);
}

}  // namespace diffilter
