#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "diffilter/signal/augment.hpp"
#include "diffilter/signal/mel.hpp"
#include "diffilter/signal/resample.hpp"
#include "diffilter/signal/stft.hpp"
#include "diffilter/signal/wav.hpp"
#include "diffilter/util/fft.hpp"
#include "diffilter/util/rng.hpp"

using namespace diffilter;

namespace {

Waveform random_wave(long n, Rng& rng, int sr = 16000) {
  Eigen::VectorXd x(n);
  for (long i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);
  return Waveform(std::move(x), sr);
}

Waveform sine(double freq, double seconds, int sr = 16000, double amp = 0.5) {
  long n = std::lround(seconds * sr);
  Eigen::VectorXd x(n);
  for (long i = 0; i < n; ++i) x[i] = amp * std::sin(2.0 * M_PI * freq * i / sr);
  return Waveform(std::move(x), sr);
}

// FFT-peak frequency estimate, zero-padded for resolution.
double dominant_freq(const Waveform& w) {
  int n = 1;
  while (n < 4 * w.length()) n <<= 1;
  RealFft& fft = fft_for_size(n);
  std::vector<double> buf(n, 0.0);
  for (long i = 0; i < w.length(); ++i) buf[i] = w.samples[i];
  std::vector<std::complex<double>> spec(fft.bins());
  fft.forward(buf.data(), spec.data());
  int best = 1;
  double best_mag = 0.0;
  for (int k = 1; k < fft.bins(); ++k)
    if (std::abs(spec[k]) > best_mag) {
      best_mag = std::abs(spec[k]);
      best = k;
    }
  return static_cast<double>(best) * w.sample_rate / n;
}

}  // namespace

TEST_CASE("stft: impulse with rectangular window has flat frame-0 magnitude") {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(800);
  x[0] = 1.0;
  StftConfig cfg;
  cfg.window = Window::rect;
  Spectrogram s = stft(Waveform(x), cfg);
  for (long k = 0; k < s.num_bins(); ++k)
    CHECK(std::abs(s.channels[0](k, 0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stft/istft round trip is exact on interior samples") {
  Rng rng(12345);
  for (int rep = 0; rep < 4; ++rep) {
    Waveform x = random_wave(16000, rng);
    StftConfig cfg;
    Spectrogram s = stft(x, cfg);
    Waveform y = istft_mono(s);
    REQUIRE(y.length() == x.length());
    double max_err = 0.0;
    for (long i = cfg.win_length; i < x.length() - cfg.win_length; ++i)
      max_err = std::max(max_err, std::abs(x.samples[i] - y.samples[i]));
    CHECK(max_err < 1e-6);
  }
}

TEST_CASE("stft is linear") {
  Rng rng(7);
  Waveform x = random_wave(4000, rng);
  Waveform x2(Eigen::VectorXd(2.0 * x.samples), x.sample_rate);
  Spectrogram a = stft(x), b = stft(x2);
  double max_err = 0.0;
  for (long k = 0; k < a.num_bins(); ++k)
    for (long m = 0; m < a.num_frames(); ++m)
      max_err = std::max(max_err, std::abs(2.0 * a.channels[0](k, m) - b.channels[0](k, m)));
  CHECK(max_err < 1e-10);
}

TEST_CASE("stft rejects signals shorter than one window") {
  Rng rng(3);
  CHECK_THROWS(stft(random_wave(399, rng)));
}

TEST_CASE("mel: frame count for 1 s is 98") {
  Rng rng(11);
  Eigen::MatrixXd m = mel_features(random_wave(16000, rng));
  CHECK(m.rows() == 98);
  CHECK(m.cols() == 40);
  CHECK(m.allFinite());
}

TEST_CASE("mel: frame-count formula holds for random lengths") {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    long t = 400 + static_cast<long>(rng.integer(32000));
    Eigen::MatrixXd m = mel_features(random_wave(t, rng));
    CHECK(m.rows() == 1 + (t - 400) / 160);
  }
}

TEST_CASE("mel: silence hits the log floor everywhere") {
  Waveform silence(Eigen::VectorXd::Zero(8000));
  Eigen::MatrixXd m = mel_features(silence);
  const double floor_db = std::log(1e-10);
  CHECK((m.array() == floor_db).all());
}

TEST_CASE("mel: doubling amplitude shifts active bins by log 4") {
  Waveform x = sine(440.0, 1.0, 16000, 0.4);
  Waveform x2 = sine(440.0, 1.0, 16000, 0.8);
  Eigen::MatrixXd a = mel_features(x), b = mel_features(x2);
  // compare on the strongest mel channel of an interior frame
  int frame = 40;
  int best = 0;
  a.row(frame).maxCoeff(&best);
  CHECK(b(frame, best) - a(frame, best) == doctest::Approx(std::log(4.0)).epsilon(1e-9));
}

TEST_CASE("mel rejects too-short input") {
  CHECK_THROWS(mel_features(Waveform(Eigen::VectorXd::Zero(300))));
}

TEST_CASE("speed_perturb: lengths and frequency scaling") {
  Rng rng(5);
  Waveform x = random_wave(16000, rng);
  Waveform y = speed_perturb(x, 1.1);
  CHECK(std::abs(y.length() - 14545) <= 2);

  Waveform s = sine(100.0, 2.0);
  Waveform slow = speed_perturb(s, 0.9);
  CHECK(dominant_freq(slow) == doctest::Approx(90.0).epsilon(0.02));

  CHECK_THROWS(speed_perturb(x, 1.0));
  CHECK_THROWS(speed_perturb(x, 0.8));
}

TEST_CASE("speed round trip restores length within 4 samples") {
  Rng rng(17);
  for (double f : {0.9, 1.1}) {
    Waveform x = random_wave(16000 + static_cast<long>(rng.integer(8000)), rng);
    Waveform y = apply_speed(x, f);
    Waveform z = apply_speed(y, 1.0 / f);
    CHECK(std::abs(z.length() - x.length()) <= 4);
  }
}

TEST_CASE("time_mask zeroes one contiguous second") {
  Rng rng(99);
  Waveform x = random_wave(64000, rng);
  Rng mask_rng(4);
  Waveform y = time_mask(x, 1.0, mask_rng);
  REQUIRE(y.length() == x.length());

  long zeros = 0, longest = 0, run = 0;
  for (long i = 0; i < y.length(); ++i) {
    if (y.samples[i] == 0.0) {
      zeros++;
      run++;
      longest = std::max(longest, run);
    } else {
      run = 0;
    }
  }
  CHECK(longest == 16000);
  CHECK(zeros == 16000);  // random input has no incidental zeros
  CHECK(y.samples.squaredNorm() <= x.samples.squaredNorm());

  Rng r1(123), r2(123);
  Waveform m1 = time_mask(x, 1.0, r1), m2 = time_mask(x, 1.0, r2);
  CHECK((m1.samples - m2.samples).cwiseAbs().maxCoeff() == 0.0);

  Waveform short_x = random_wave(16000, rng);
  CHECK_THROWS(time_mask(short_x, 1.0, rng));
}

TEST_CASE("wav: float32 and pcm16 round trips") {
  Rng rng(31);
  Eigen::MatrixXd ch(4, 1000);
  for (long c = 0; c < 4; ++c)
    for (long t = 0; t < 1000; ++t) ch(c, t) = rng.uniform(-0.99, 0.99);
  MultichannelWaveform x(ch, 16000);

  std::string f32 = "/tmp/difft_f32.wav", p16 = "/tmp/difft_p16.wav";
  write_wav(f32, x, WavFormat::float32);
  MultichannelWaveform y = read_wav(f32);
  REQUIRE(y.num_channels() == 4);
  REQUIRE(y.length() == 1000);
  CHECK(y.sample_rate == 16000);
  CHECK((y.channels - x.channels).cwiseAbs().maxCoeff() < 1e-7);

  write_wav(p16, x, WavFormat::pcm16);
  MultichannelWaveform z = read_wav(p16);
  CHECK((z.channels - x.channels).cwiseAbs().maxCoeff() < 1.0 / 32000.0);
  std::remove(f32.c_str());
  std::remove(p16.c_str());
}
