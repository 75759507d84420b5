#pragma once

#include "diffilter/signal/waveform.hpp"

namespace diffilter {

inline constexpr double kSdrClampDb = 60.0;

// Scale-invariant SDR in dB, clamped to [-60, 60]. est is first projected
// onto ref (alpha = <est,ref>/||ref||^2), so positive rescaling of est is a
// no-op.
double si_sdr(const Waveform& est, const Waveform& ref);
double si_sdr(const Eigen::VectorXd& est, const Eigen::VectorXd& ref);

struct BssEvalResult {
  double sir_db;
  double sdr_db;
};

// BSS-eval style decomposition for one target source plus one noise
// reference: est is projected onto the span of 0..n_taps-1 sample delays of
// ref_speech (target + allowed distortion), then onto the joint span with
// ref_noise delays (adds interference); the remainder is artifact.
BssEvalResult bss_eval_sir_sdr(const Waveform& est, const Waveform& ref_speech,
                               const Waveform& ref_noise, int n_taps = 512);

}  // namespace diffilter
