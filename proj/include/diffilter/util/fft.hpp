#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace diffilter {

// Thin FFTW wrapper. Each RealFft owns its plan and aligned buffers; plan
// creation is serialized internally (FFTW planning is not thread-safe).
// Plans use FFTW_ESTIMATE so results do not depend on runtime timing.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return n_; }
  int bins() const { return n_ / 2 + 1; }

  // x: n real samples -> n/2+1 complex bins.
  void forward(const double* x, std::complex<double>* out);
  // n/2+1 complex bins -> n real samples, UNNORMALIZED (scale by 1/n for inverse).
  void inverse(const std::complex<double>* x, double* out);

 private:
  int n_;
  void* plan_fwd_;
  void* plan_inv_;
  double* real_buf_;
  void* cplx_buf_;
};

// Per-thread plan cache. Safe to call from worker threads.
RealFft& fft_for_size(int n);

// Convenience: linear convolution via FFT, output length a.size()+b.size()-1.
Eigen::VectorXd fft_convolve(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Linear cross-correlation r[k] = sum_t a[t] * b[t+k] for k in
// [-max_lag, max_lag]; result index k + max_lag. Zero-padded (non-circular).
Eigen::VectorXd fft_crosscorr(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int max_lag);

}  // namespace diffilter
