#include "diffilter/util/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace diffilter {

namespace {
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("RealFft: size must be positive");
  std::lock_guard<std::mutex> lock(plan_mutex());
  real_buf_ = fftw_alloc_real(n);
  cplx_buf_ = fftw_alloc_complex(n / 2 + 1);
  plan_fwd_ = fftw_plan_dft_r2c_1d(n, real_buf_, static_cast<fftw_complex*>(cplx_buf_),
                                   FFTW_ESTIMATE);
  plan_inv_ = fftw_plan_dft_c2r_1d(n, static_cast<fftw_complex*>(cplx_buf_), real_buf_,
                                   FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_inv_) throw std::runtime_error("RealFft: plan creation failed");
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
  fftw_free(real_buf_);
  fftw_free(cplx_buf_);
}

void RealFft::forward(const double* x, std::complex<double>* out) {
  std::memcpy(real_buf_, x, sizeof(double) * n_);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(out, cplx_buf_, sizeof(std::complex<double>) * bins());
}

void RealFft::inverse(const std::complex<double>* x, double* out) {
  std::memcpy(cplx_buf_, x, sizeof(std::complex<double>) * bins());
  fftw_execute(static_cast<fftw_plan>(plan_inv_));
  std::memcpy(out, real_buf_, sizeof(double) * n_);
}

RealFft& fft_for_size(int n) {
  thread_local std::unordered_map<int, std::unique_ptr<RealFft>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<RealFft>(n)).first;
  return *it->second;
}

static int next_pow2(long n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

Eigen::VectorXd fft_convolve(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() == 0 || b.size() == 0) throw std::invalid_argument("fft_convolve: empty input");
  long out_len = a.size() + b.size() - 1;
  int n = next_pow2(out_len);
  RealFft& fft = fft_for_size(n);

  std::vector<double> ta(n, 0.0), tb(n, 0.0);
  std::memcpy(ta.data(), a.data(), sizeof(double) * a.size());
  std::memcpy(tb.data(), b.data(), sizeof(double) * b.size());
  std::vector<std::complex<double>> fa(fft.bins()), fb(fft.bins());
  fft.forward(ta.data(), fa.data());
  fft.forward(tb.data(), fb.data());
  for (int k = 0; k < fft.bins(); ++k) fa[k] *= fb[k];
  std::vector<double> prod(n);
  fft.inverse(fa.data(), prod.data());

  Eigen::VectorXd out(out_len);
  for (long i = 0; i < out_len; ++i) out[i] = prod[i] / n;
  return out;
}

Eigen::VectorXd fft_crosscorr(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int max_lag) {
  // corr(a,b)[k] = conv(reverse(a), b)[k + len(a) - 1]
  Eigen::VectorXd ar = a.reverse();
  Eigen::VectorXd full = fft_convolve(ar, b);
  Eigen::VectorXd out(2 * max_lag + 1);
  long center = a.size() - 1;
  for (int k = -max_lag; k <= max_lag; ++k) {
    long idx = center + k;
    out[k + max_lag] = (idx >= 0 && idx < full.size()) ? full[idx] : 0.0;
  }
  return out;
}

}  // namespace diffilter
