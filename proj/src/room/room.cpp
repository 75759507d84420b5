#include "diffilter/room/room.hpp"

#include <cmath>
#include <stdexcept>

namespace diffilter {

namespace {
constexpr double kSourceWallMargin = 1.5;
constexpr double kMicWallMargin = 1.0;
constexpr double kVerticalMargin = 0.3;

double lateral_wall_distance(const RoomSpec& r, const Eigen::Vector3d& p) {
  return std::min(std::min(p.x(), r.length - p.x()), std::min(p.y(), r.width - p.y()));
}
}  // namespace

double RoomSpec::min_source_wall_distance() const {
  return std::min(lateral_wall_distance(*this, source_pos),
                  lateral_wall_distance(*this, noise_pos));
}

double RoomSpec::min_mic_wall_distance() const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& m : mic_positions) d = std::min(d, lateral_wall_distance(*this, m));
  return d;
}

bool RoomSpec::inside(const Eigen::Vector3d& p) const {
  return p.x() > 0 && p.x() < length && p.y() > 0 && p.y() < width && p.z() > 0 &&
         p.z() < height;
}

void RoomSpec::validate() const {
  if (length < 3.0 || length > 8.0 || width < 3.0 || width > 5.0 || height < 2.0 ||
      height > 3.0)
    throw std::invalid_argument("RoomSpec: dimensions out of range");
  if (rt60 < 0.2 || rt60 > 0.6) throw std::invalid_argument("RoomSpec: rt60 out of range");
  if (min_source_wall_distance() < kSourceWallMargin - 1e-9)
    throw std::invalid_argument("RoomSpec: source too close to a wall");
  if (min_mic_wall_distance() < kMicWallMargin - 1e-9)
    throw std::invalid_argument("RoomSpec: microphone too close to a wall");
  if (!inside(source_pos) || !inside(noise_pos))
    throw std::invalid_argument("RoomSpec: source outside room");
  for (const auto& m : mic_positions)
    if (!inside(m)) throw std::invalid_argument("RoomSpec: mic outside room");
}

RoomSpec sample_room(Rng& rng) {
  RoomSpec r;
  r.length = rng.uniform(3.0, 8.0);
  r.width = rng.uniform(3.0, 5.0);
  r.height = rng.uniform(2.0, 3.0);
  r.rt60 = rng.uniform(0.2, 0.6);

  auto sample_source = [&](double margin) {
    // rejection sampling over the room until the wall constraints hold
    for (;;) {
      Eigen::Vector3d p(rng.uniform(0.0, r.length), rng.uniform(0.0, r.width),
                        rng.uniform(kVerticalMargin, r.height - kVerticalMargin));
      if (lateral_wall_distance(r, p) >= margin) return p;
    }
  };
  r.source_pos = sample_source(kSourceWallMargin);
  r.noise_pos = sample_source(kSourceWallMargin);

  // mic array: circle of kNumMics at a sampled center; the whole array
  // stays at least 1 m from the lateral walls
  const double radius = kMicArrayDiameter / 2.0;
  Eigen::Vector3d center;
  for (;;) {
    center = Eigen::Vector3d(rng.uniform(0.0, r.length), rng.uniform(0.0, r.width),
                             rng.uniform(0.5, r.height - 0.5));
    if (lateral_wall_distance(r, center) >= kMicWallMargin + radius) break;
  }
  for (int i = 0; i < kNumMics; ++i) {
    const double a = 2.0 * M_PI * i / kNumMics;
    r.mic_positions[i] =
        center + Eigen::Vector3d(radius * std::cos(a), radius * std::sin(a), 0.0);
  }
  r.validate();
  return r;
}

double estimate_rt60(const Eigen::VectorXd& ir, int sample_rate) {
  const long n = ir.size();
  if (n < 2) throw std::invalid_argument("estimate_rt60: empty impulse response");

  // Schroeder backward integration
  Eigen::VectorXd edc(n);
  double acc = 0.0;
  for (long i = n - 1; i >= 0; --i) {
    acc += ir[i] * ir[i];
    edc[i] = acc;
  }
  const double total = edc[0];
  if (total <= 0.0) throw std::invalid_argument("estimate_rt60: zero-energy impulse response");

  auto time_at_db = [&](double db) {
    const double target = total * std::pow(10.0, db / 10.0);
    for (long i = 0; i < n; ++i)
      if (edc[i] <= target) return static_cast<double>(i) / sample_rate;
    return static_cast<double>(n) / sample_rate;
  };

  // fit the decay between -5 and -25 dB, extrapolate to 60 dB
  const double t5 = time_at_db(-5.0);
  const double t25 = time_at_db(-25.0);
  return (t25 - t5) * 3.0;
}

}  // namespace diffilter
