#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diffilter/metrics/enhancement.hpp"
#include "diffilter/metrics/verification.hpp"
#include "diffilter/util/rng.hpp"

using namespace diffilter;

namespace {

// Exhaustive threshold-sweep oracle: direct counting at every candidate
// threshold, independent of the production cumulative-count implementation.
struct SweepPoint {
  double thr, far, frr;
};

std::vector<SweepPoint> sweep_oracle(const ScoreSet& s) {
  std::vector<double> thr = s.scores;
  std::sort(thr.begin(), thr.end());
  thr.erase(std::unique(thr.begin(), thr.end()), thr.end());
  thr.insert(thr.begin(), -std::numeric_limits<double>::infinity());
  thr.push_back(std::numeric_limits<double>::infinity());

  double n_pos = 0, n_neg = 0;
  for (int l : s.labels) (l ? n_pos : n_neg) += 1;

  std::vector<SweepPoint> out;
  for (double t : thr) {
    double fa = 0, fr = 0;
    for (std::size_t j = 0; j < s.scores.size(); ++j) {
      if (s.labels[j] == 0 && s.scores[j] >= t) fa += 1;
      if (s.labels[j] == 1 && s.scores[j] < t) fr += 1;
    }
    out.push_back({t, fa / n_neg, fr / n_pos});
  }
  return out;
}

double eer_oracle(const ScoreSet& s) {
  auto pts = sweep_oracle(s);
  double best_gap = std::numeric_limits<double>::infinity();
  double result = 1.0;
  for (const auto& p : pts) {
    double gap = std::abs(p.frr - p.far);
    if (gap < best_gap) {
      best_gap = gap;
      result = p.far;
    }
  }
  return result;
}

ScoreSet random_scoreset(Rng& rng, int n, double separation) {
  ScoreSet s;
  for (int i = 0; i < n; ++i) {
    int label = rng.bernoulli(0.5) ? 1 : 0;
    double mean = label ? separation / 2 : -separation / 2;
    s.labels.push_back(label);
    s.scores.push_back(std::tanh(rng.normal(mean, 0.5)));
  }
  // guarantee both classes
  s.labels[0] = 0;
  s.labels[n - 1] = 1;
  return s;
}

}  // namespace

TEST_CASE("det_curve: separated and inverted two-trial cases") {
  ScoreSet sep{{0.9, 0.1}, {1, 0}};
  DetCurve c = det_curve(sep);
  // at a threshold of 0.5 (between the two distinct scores): FAR=0, FRR=0
  for (std::size_t i = 0; i < c.thresholds.size(); ++i)
    if (c.thresholds[i] > 0.1 && c.thresholds[i] <= 0.9) {
      CHECK(c.far[i] == 0.0);
      CHECK(c.frr[i] == 0.0);
    }

  ScoreSet inv{{0.1, 0.9}, {1, 0}};
  DetCurve ci = det_curve(inv);
  for (std::size_t i = 0; i < ci.thresholds.size(); ++i)
    if (ci.thresholds[i] > 0.1 && ci.thresholds[i] <= 0.9) {
      CHECK(ci.far[i] == 1.0);
      CHECK(ci.frr[i] == 1.0);
    }
}

TEST_CASE("det_curve matches the exhaustive sweep oracle") {
  Rng rng(42);
  for (int rep = 0; rep < 50; ++rep) {
    ScoreSet s = random_scoreset(rng, 20, 1.0);
    DetCurve c = det_curve(s);
    auto pts = sweep_oracle(s);
    REQUIRE(c.thresholds.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(c.thresholds[i] == pts[i].thr);
      CHECK(c.far[i] == pts[i].far);
      CHECK(c.frr[i] == pts[i].frr);
    }
  }
}

TEST_CASE("det_curve monotonicity and range") {
  Rng rng(43);
  ScoreSet s = random_scoreset(rng, 101, 0.7);
  DetCurve c = det_curve(s);
  for (std::size_t i = 0; i + 1 < c.thresholds.size(); ++i) {
    CHECK(c.far[i + 1] <= c.far[i]);
    CHECK(c.frr[i + 1] >= c.frr[i]);
  }
  for (std::size_t i = 0; i < c.far.size(); ++i) {
    CHECK(c.far[i] >= 0.0);
    CHECK(c.far[i] <= 1.0);
    CHECK(c.frr[i] >= 0.0);
    CHECK(c.frr[i] <= 1.0);
  }
}

TEST_CASE("eer: trivial and oracle-checked values") {
  ScoreSet sep{{0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}};
  CHECK(eer(sep) == 0.0);

  ScoreSet mixed{{0.8, 0.6, 0.4, 0.2}, {1, 0, 1, 0}};
  CHECK(eer(mixed) == eer_oracle(mixed));
  // frozen from the sweep oracle: threshold 0.4 gives FAR=FRR=0.5
  CHECK(eer(mixed) == 0.5);
}

TEST_CASE("eer equals oracle on random score sets (property)") {
  Rng rng(4242);
  for (int rep = 0; rep < 300; ++rep) {
    int n = 2 + static_cast<int>(rng.integer(199));
    ScoreSet s = random_scoreset(rng, std::max(n, 2), rng.uniform(0.0, 2.0));
    double a = eer(s), b = eer_oracle(s);
    CHECK(a == b);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
  }
}

TEST_CASE("eer: random labels converge to 0.5") {
  Rng rng(77);
  ScoreSet s;
  for (int i = 0; i < 2000; ++i) {
    s.scores.push_back(rng.uniform(-1.0, 1.0));
    s.labels.push_back(rng.bernoulli(0.5) ? 1 : 0);
  }
  s.labels[0] = 0;
  s.labels[1] = 1;
  CHECK(std::abs(eer(s) - 0.5) < 0.05);
}

TEST_CASE("eer is invariant under strictly increasing score transforms") {
  Rng rng(88);
  for (int rep = 0; rep < 20; ++rep) {
    ScoreSet s = random_scoreset(rng, 60, 0.8);
    double base = eer(s);
    ScoreSet t = s;
    for (double& v : t.scores) v = std::exp(2.0 * v) + 0.1 * v;
    CHECK(eer(t) == base);
  }
}

TEST_CASE("eer rejects single-class labels") {
  ScoreSet s{{0.1, 0.2}, {1, 1}};
  CHECK_THROWS(eer(s));
  CHECK_THROWS(det_curve(s));
}

TEST_CASE("cosine_pair_loss cases") {
  Eigen::VectorXd a(3), b(3);
  a << 1, 0, 0;
  b << 0, 1, 0;
  CHECK(cosine_pair_loss(a, a, 1) == doctest::Approx(0.0));
  CHECK(cosine_pair_loss(a, b, 0) == doctest::Approx(0.0));

  // cos = 0.5 against label 0 with margin 0.2 -> 0.3
  Eigen::VectorXd c(2), d(2);
  c << 1, 0;
  d << 0.5, std::sqrt(3.0) / 2.0;
  CHECK(cosine_pair_loss(c, d, 0, 0.2) == doctest::Approx(0.3).epsilon(1e-12));

  Eigen::VectorXd z = Eigen::VectorXd::Zero(3);
  CHECK_THROWS(cosine_pair_loss(a, z, 1));
}

TEST_CASE("cosine_pair_loss is non-negative with exact zero set (property)") {
  Rng rng(9);
  for (int rep = 0; rep < 200; ++rep) {
    Eigen::VectorXd a(8), b(8);
    for (int i = 0; i < 8; ++i) {
      a[i] = rng.normal();
      b[i] = rng.normal();
    }
    int label = rng.bernoulli(0.5);
    double l = cosine_pair_loss(a, b, label);
    CHECK(l >= 0.0);
    double c = cosine_similarity(a, b);
    bool zero_expected = (label == 1 && c == 1.0) || (label == 0 && c <= 0.2);
    if (zero_expected) CHECK(l == 0.0);
    if (l == 0.0) CHECK(zero_expected);
  }
}

TEST_CASE("si_sdr: identity, scale invariance, orthogonal noise") {
  Rng rng(10);
  Eigen::VectorXd ref(4096);
  for (long i = 0; i < ref.size(); ++i) ref[i] = rng.normal();
  Waveform r(ref);

  CHECK(si_sdr(r, r) == 60.0);
  CHECK(si_sdr(Waveform(Eigen::VectorXd(2.0 * ref)), r) == 60.0);

  // orthogonal equal-energy perturbation -> 0 dB
  Eigen::VectorXd noise(4096);
  for (long i = 0; i < noise.size(); ++i) noise[i] = rng.normal();
  noise -= (noise.dot(ref) / ref.squaredNorm()) * ref;       // exact orthogonalization
  noise *= std::sqrt(ref.squaredNorm() / noise.squaredNorm());  // equal energy
  Waveform est(Eigen::VectorXd(ref + noise));
  CHECK(si_sdr(est, r) == doctest::Approx(0.0).epsilon(1e-9));

  CHECK_THROWS(si_sdr(Waveform(Eigen::VectorXd::Zero(8)), Waveform(Eigen::VectorXd::Zero(8))));
}

TEST_CASE("si_sdr scale invariance is exact (property)") {
  Rng rng(11);
  Eigen::VectorXd ref(1024), est(1024);
  for (long i = 0; i < 1024; ++i) {
    ref[i] = rng.normal();
    est[i] = rng.normal() + 0.5 * ref[i];
  }
  double base = si_sdr(Waveform(est), Waveform(ref));
  for (int rep = 0; rep < 50; ++rep) {
    double alpha = std::exp(rng.uniform(-4.0, 4.0));
    double scaled = si_sdr(Waveform(Eigen::VectorXd(alpha * est)), Waveform(ref));
    CHECK(std::abs(scaled - base) < 1e-9);
  }
}

namespace {

// Time-disjoint references with a gap wider than the distortion filter, so
// delayed spans stay exactly orthogonal and projections are analytic.
struct DisjointRefs {
  Waveform speech, noise;
  long t = 8192;
};

DisjointRefs make_disjoint_refs(Rng& rng) {
  DisjointRefs d;
  Eigen::VectorXd s = Eigen::VectorXd::Zero(d.t), n = Eigen::VectorXd::Zero(d.t);
  for (long i = 0; i < 2500; ++i) s[i] = rng.normal();
  for (long i = 4000; i < 7000; ++i) n[i] = rng.normal();
  d.speech = Waveform(std::move(s));
  d.noise = Waveform(std::move(n));
  return d;
}

Eigen::VectorXd shifted(const Eigen::VectorXd& x, int k) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
  for (long i = 0; i + k < x.size(); ++i) y[i + k] = x[i];
  return y;
}

}  // namespace

TEST_CASE("bss_eval: pure speech estimate clamps high, pure noise clamps low") {
  Rng rng(12);
  DisjointRefs d = make_disjoint_refs(rng);
  BssEvalResult r = bss_eval_sir_sdr(d.speech, d.speech, d.noise);
  CHECK(r.sir_db >= 60.0);
  CHECK(r.sdr_db >= 60.0);

  BssEvalResult rn = bss_eval_sir_sdr(d.noise, d.speech, d.noise);
  CHECK(rn.sir_db <= -40.0);
}

TEST_CASE("bss_eval matches projection arithmetic on disjoint constructions") {
  Rng rng(13);
  DisjointRefs d = make_disjoint_refs(rng);
  const double es = d.speech.samples.squaredNorm();
  const double en = d.noise.samples.squaredNorm();

  // est = a * shift(speech, ks) + b * shift(noise, kn): both terms live in
  // the allowed 512-tap distortion spans, so SIR = SDR = 10log10(a^2 es / b^2 en).
  for (int rep = 0; rep < 3; ++rep) {
    double a = rng.uniform(0.5, 2.0), b = rng.uniform(0.5, 2.0);
    int ks = static_cast<int>(rng.integer(400)), kn = static_cast<int>(rng.integer(400));
    Waveform est(Eigen::VectorXd(a * shifted(d.speech.samples, ks) +
                                 b * shifted(d.noise.samples, kn)));
    BssEvalResult r = bss_eval_sir_sdr(est, d.speech, d.noise);
    double expect = 10.0 * std::log10(a * a * es / (b * b * en));
    CHECK(std::abs(r.sir_db - expect) < 0.1);
    CHECK(std::abs(r.sdr_db - expect) < 0.1);
  }
}

TEST_CASE("bss_eval: equal-energy mixture gives ~0 dB SIR") {
  Rng rng(14);
  DisjointRefs d = make_disjoint_refs(rng);
  double scale = std::sqrt(d.speech.samples.squaredNorm() / d.noise.samples.squaredNorm());
  Waveform est(Eigen::VectorXd(d.speech.samples + scale * d.noise.samples));
  BssEvalResult r = bss_eval_sir_sdr(est, d.speech, d.noise);
  CHECK(std::abs(r.sir_db) < 0.1);
}

TEST_CASE("bss_eval rejects collinear references") {
  Rng rng(15);
  DisjointRefs d = make_disjoint_refs(rng);
  Waveform almost(Eigen::VectorXd(2.0 * d.speech.samples));
  CHECK_THROWS(bss_eval_sir_sdr(d.speech, d.speech, almost));
}
