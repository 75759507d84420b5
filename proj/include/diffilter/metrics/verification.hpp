#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace diffilter {

// Cosine scores with binary same-speaker labels (1 = target, 0 = impostor).
struct ScoreSet {
  std::vector<double> scores;
  std::vector<int> labels;

  void validate() const;
  int count(int label) const;
};

// FAR/FRR sampled at each distinct score plus -inf/+inf sentinels.
// FAR(t) = fraction of impostors with score >= t (non-increasing in t);
// FRR(t) = fraction of targets with score < t (non-decreasing).
struct DetCurve {
  std::vector<double> thresholds;
  std::vector<double> far;
  std::vector<double> frr;

  void write_csv(const std::string& path) const;
};

DetCurve det_curve(const ScoreSet& s);

// Equal error rate: FAR at the threshold minimizing |FRR - FAR|, ties broken
// toward the smallest threshold.
double eer(const ScoreSet& s);

// Plain-text trial scores, one `<label> <enroll-id> <test-id> <score>` line
// per trial.
struct ScoredTrial {
  int label;
  std::string enroll_id;
  std::string test_id;
  double score;
};

void write_score_file(const std::string& path, const std::vector<ScoredTrial>& trials);
std::vector<ScoredTrial> read_score_file(const std::string& path);
ScoreSet to_score_set(const std::vector<ScoredTrial>& trials);

// Pair losses over embeddings. label=1: 1 - cos; label=0: max(0, cos - margin).
double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
double cosine_pair_loss(const Eigen::VectorXd& emb1, const Eigen::VectorXd& emb2, int label,
                        double margin = 0.2);

}  // namespace diffilter
