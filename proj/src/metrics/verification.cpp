#include "diffilter/metrics/verification.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace diffilter {

void ScoreSet::validate() const {
  if (scores.size() != labels.size())
    throw std::invalid_argument("ScoreSet: scores/labels length mismatch");
  if (scores.empty()) throw std::invalid_argument("ScoreSet: empty");
  int pos = 0, neg = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1)
      throw std::invalid_argument("ScoreSet: labels must be 0 or 1");
    if (!std::isfinite(scores[i])) throw std::invalid_argument("ScoreSet: non-finite score");
    (labels[i] ? pos : neg)++;
  }
  if (pos == 0 || neg == 0)
    throw std::invalid_argument("ScoreSet: need at least one trial of each class");
}

int ScoreSet::count(int label) const {
  int n = 0;
  for (int l : labels) n += (l == label);
  return n;
}

DetCurve det_curve(const ScoreSet& s) {
  s.validate();
  const double n_pos = s.count(1);
  const double n_neg = s.count(0);
  const std::size_t n = s.scores.size();

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return s.scores[a] < s.scores[b]; });

  DetCurve out;
  out.thresholds.push_back(-std::numeric_limits<double>::infinity());
  out.far.push_back(1.0);  // every impostor scores >= -inf
  out.frr.push_back(0.0);

  // Walk thresholds upward; everything processed so far is strictly below.
  std::size_t pos_below = 0, neg_below = 0, i = 0;
  while (i < n) {
    const double t = s.scores[order[i]];
    out.thresholds.push_back(t);
    out.far.push_back((n_neg - neg_below) / n_neg);
    out.frr.push_back(pos_below / n_pos);
    while (i < n && s.scores[order[i]] == t) {
      (s.labels[order[i]] ? pos_below : neg_below) += 1;
      ++i;
    }
  }
  out.thresholds.push_back(std::numeric_limits<double>::infinity());
  out.far.push_back(0.0);
  out.frr.push_back(1.0);
  return out;
}

double eer(const ScoreSet& s) {
  DetCurve c = det_curve(s);
  std::size_t best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.thresholds.size(); ++i) {
    const double gap = std::abs(c.frr[i] - c.far[i]);
    if (gap < best_gap) {  // strict: ties keep the smallest threshold
      best_gap = gap;
      best = i;
    }
  }
  return c.far[best];
}

void DetCurve::write_csv(const std::string& path) const {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("DetCurve: cannot open " + path);
  f << "threshold,far,frr\n";
  for (std::size_t i = 0; i < thresholds.size(); ++i)
    f << thresholds[i] << "," << far[i] << "," << frr[i] << "\n";
}

void write_score_file(const std::string& path, const std::vector<ScoredTrial>& trials) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("write_score_file: cannot open " + path);
  f.precision(17);
  for (const auto& t : trials)
    f << t.label << " " << t.enroll_id << " " << t.test_id << " " << t.score << "\n";
}

std::vector<ScoredTrial> read_score_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_score_file: cannot open " + path);
  std::vector<ScoredTrial> out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    ScoredTrial t;
    if (!(ss >> t.label >> t.enroll_id >> t.test_id >> t.score))
      throw std::runtime_error("read_score_file: bad line: " + line);
    out.push_back(std::move(t));
  }
  return out;
}

ScoreSet to_score_set(const std::vector<ScoredTrial>& trials) {
  ScoreSet s;
  for (const auto& t : trials) {
    s.scores.push_back(t.score);
    s.labels.push_back(t.label);
  }
  return s;
}

double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0)
    throw std::invalid_argument("cosine_similarity: zero-norm embedding");
  return a.dot(b) / (na * nb);
}

double cosine_pair_loss(const Eigen::VectorXd& emb1, const Eigen::VectorXd& emb2, int label,
                        double margin) {
  const double c = cosine_similarity(emb1, emb2);
  if (label == 1) return 1.0 - c;
  if (label == 0) return std::max(0.0, c - margin);
  throw std::invalid_argument("cosine_pair_loss: label must be 0 or 1");
}

}  // namespace diffilter
