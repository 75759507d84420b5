#include "diffilter/metrics/enhancement.hpp"

#include <cmath>
#include <stdexcept>

#include "diffilter/util/fft.hpp"

namespace diffilter {

namespace {
double clamp_db(double num, double den) {
  // 10*log10(num/den) clamped to +/-60 dB; den == 0 means perfect -> +60.
  const double lim = std::pow(10.0, kSdrClampDb / 10.0);
  if (den <= num / lim) return kSdrClampDb;
  if (num <= den / lim) return -kSdrClampDb;
  return 10.0 * std::log10(num / den);
}
}  // namespace

double si_sdr(const Eigen::VectorXd& est, const Eigen::VectorXd& ref) {
  if (est.size() != ref.size()) throw std::invalid_argument("si_sdr: length mismatch");
  if (est.size() == 0) throw std::invalid_argument("si_sdr: empty input");
  const double ref_energy = ref.squaredNorm();
  if (ref_energy == 0.0) throw std::invalid_argument("si_sdr: zero reference");
  const double alpha = est.dot(ref) / ref_energy;
  const double target = alpha * alpha * ref_energy;
  const double resid = (est - alpha * ref).squaredNorm();
  return clamp_db(target, resid);
}

double si_sdr(const Waveform& est, const Waveform& ref) {
  return si_sdr(est.samples, ref.samples);
}

namespace {

// Toeplitz block G[i,j] = r[i - j + n_taps - 1] from a correlation vector r
// of length 2*n_taps-1 (lags -(n_taps-1)..(n_taps-1)).
Eigen::MatrixXd toeplitz_from_corr(const Eigen::VectorXd& r, int n_taps) {
  Eigen::MatrixXd g(n_taps, n_taps);
  for (int i = 0; i < n_taps; ++i)
    for (int j = 0; j < n_taps; ++j) g(i, j) = r[(i - j) + n_taps - 1];
  return g;
}

// Correlation of a delayed family against est: d[tau] = sum_t a[t - tau] e[t].
Eigen::VectorXd delay_corr(const Eigen::VectorXd& a, const Eigen::VectorXd& e, int n_taps) {
  Eigen::VectorXd r = fft_crosscorr(e, a, n_taps - 1);  // r[k] = sum e[t] a[t+k]
  Eigen::VectorXd d(n_taps);
  for (int tau = 0; tau < n_taps; ++tau) d[tau] = r[n_taps - 1 - tau];
  return d;
}

// FIR-filter a with coefficients c (length n_taps), output length out_len.
Eigen::VectorXd fir(const Eigen::VectorXd& a, const Eigen::VectorXd& c, long out_len) {
  Eigen::VectorXd full = fft_convolve(a, c);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(out_len);
  const long n = std::min<long>(out_len, full.size());
  out.head(n) = full.head(n);
  return out;
}

}  // namespace

BssEvalResult bss_eval_sir_sdr(const Waveform& est, const Waveform& ref_speech,
                               const Waveform& ref_noise, int n_taps) {
  if (est.length() != ref_speech.length() || est.length() != ref_noise.length())
    throw std::invalid_argument("bss_eval: length mismatch");
  if (est.length() < 2 * n_taps) throw std::invalid_argument("bss_eval: signal too short");

  const Eigen::VectorXd& e = est.samples;
  const Eigen::VectorXd& s = ref_speech.samples;
  const Eigen::VectorXd& n = ref_noise.samples;
  const long ext = e.size() + n_taps;  // projections live on the extended support

  // Gram of the delayed-reference family (exact full correlations; the
  // delayed copies are zero-padded so the blocks are Toeplitz).
  const Eigen::VectorXd rss = fft_crosscorr(s, s, n_taps - 1);
  const Eigen::VectorXd rnn = fft_crosscorr(n, n, n_taps - 1);
  const Eigen::VectorXd rsn = fft_crosscorr(s, n, n_taps - 1);

  Eigen::MatrixXd G(2 * n_taps, 2 * n_taps);
  G.topLeftCorner(n_taps, n_taps) = toeplitz_from_corr(rss, n_taps);
  G.bottomRightCorner(n_taps, n_taps) = toeplitz_from_corr(rnn, n_taps);
  // cross block: G_sn[i,j] = sum_t s[t-i] n[t-j] = sum_u s[u] n[u + i - j]
  Eigen::MatrixXd cross(n_taps, n_taps);
  for (int i = 0; i < n_taps; ++i)
    for (int j = 0; j < n_taps; ++j) cross(i, j) = rsn[(i - j) + n_taps - 1];
  G.topRightCorner(n_taps, n_taps) = cross;
  G.bottomLeftCorner(n_taps, n_taps) = cross.transpose();

  Eigen::VectorXd d(2 * n_taps);
  d.head(n_taps) = delay_corr(s, e, n_taps);
  d.tail(n_taps) = delay_corr(n, e, n_taps);

  // speech-only projection
  Eigen::LDLT<Eigen::MatrixXd> ldlt_s(G.topLeftCorner(n_taps, n_taps));
  if (ldlt_s.info() != Eigen::Success || !ldlt_s.isPositive())
    throw std::runtime_error("bss_eval: degenerate speech reference");
  Eigen::VectorXd cs = ldlt_s.solve(d.head(n_taps));

  // joint projection
  Eigen::LDLT<Eigen::MatrixXd> ldlt_j(G);
  Eigen::VectorXd cj = ldlt_j.solve(d);
  const double rel_resid = (G * cj - d).norm() / (d.norm() + 1e-300);
  if (ldlt_j.info() != Eigen::Success || rel_resid > 1e-6)
    throw std::runtime_error("bss_eval: degenerate (collinear) references");

  const Eigen::VectorXd s_target = fir(s, cs, ext);
  Eigen::VectorXd p_joint = fir(s, cj.head(n_taps), ext) + fir(n, cj.tail(n_taps), ext);
  Eigen::VectorXd e_pad = Eigen::VectorXd::Zero(ext);
  e_pad.head(e.size()) = e;

  const Eigen::VectorXd e_interf = p_joint - s_target;
  const Eigen::VectorXd e_artif = e_pad - p_joint;

  const double target_energy = s_target.squaredNorm();
  BssEvalResult out;
  out.sir_db = clamp_db(target_energy, e_interf.squaredNorm());
  out.sdr_db = clamp_db(target_energy, (e_interf + e_artif).squaredNorm());
  return out;
}

}  // namespace diffilter
