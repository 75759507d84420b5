#include <cmath>
#include <stdexcept>

#include "diffilter/room/room.hpp"

namespace diffilter {

double sabine_absorption(const RoomSpec& r) {
  const double volume = r.length * r.width * r.height;
  const double surface =
      2.0 * (r.length * r.width + r.length * r.height + r.width * r.height);
  double alpha = 0.161 * volume / (surface * r.rt60);
  return std::min(alpha, 0.9999);
}

namespace {

// One-axis image family: position (1-2q)*s + 2*r*size with |r-q| + |r|
// reflections (uniform wall coefficient, both walls identical).
Eigen::VectorXd simulate_channel(const RoomSpec& room, const Eigen::Vector3d& src,
                                 const Eigen::Vector3d& mic, double beta, int max_order,
                                 int sample_rate, long ir_len) {
  Eigen::VectorXd ir = Eigen::VectorXd::Zero(ir_len);
  const double sizes[3] = {room.length, room.width, room.height};
  const int r_max = max_order / 2 + 1;

  for (int qx = 0; qx <= 1; ++qx)
    for (int rx = -r_max; rx <= r_max; ++rx) {
      const int ex = std::abs(rx - qx) + std::abs(rx);
      if (ex > max_order) continue;
      const double ix = (1 - 2 * qx) * src.x() + 2.0 * rx * sizes[0];
      for (int qy = 0; qy <= 1; ++qy)
        for (int ry = -r_max; ry <= r_max; ++ry) {
          const int ey = std::abs(ry - qy) + std::abs(ry);
          if (ex + ey > max_order) continue;
          const double iy = (1 - 2 * qy) * src.y() + 2.0 * ry * sizes[1];
          const double dxy2 = (ix - mic.x()) * (ix - mic.x()) + (iy - mic.y()) * (iy - mic.y());
          for (int qz = 0; qz <= 1; ++qz)
            for (int rz = -r_max; rz <= r_max; ++rz) {
              const int ez = std::abs(rz - qz) + std::abs(rz);
              const int order = ex + ey + ez;
              if (order > max_order) continue;
              const double iz = (1 - 2 * qz) * src.z() + 2.0 * rz * sizes[2];
              const double d = std::sqrt(dxy2 + (iz - mic.z()) * (iz - mic.z()));
              const long tap = std::lround(d / kSpeedOfSound * sample_rate);
              if (tap >= ir_len) continue;
              const double gain = std::pow(beta, order) / (4.0 * M_PI * std::max(d, 1e-2));
              if (gain < 1e-12) continue;
              ir[tap] += gain;
            }
        }
    }
  return ir;
}

}  // namespace

RirSet simulate_rir(const RoomSpec& room, int sample_rate, double absorption_override) {
  room.validate();
  const double alpha = absorption_override > 0.0 ? absorption_override : sabine_absorption(room);
  const double beta = std::sqrt(std::max(0.0, 1.0 - alpha));

  const double min_dim = std::min(std::min(room.length, room.width), room.height);
  const int max_order =
      std::min(30, static_cast<int>(std::ceil(room.rt60 * kSpeedOfSound / min_dim)));

  const double max_dist =
      Eigen::Vector3d(room.length, room.width, room.height).norm();
  const long ir_len = std::lround((1.25 * room.rt60 + max_dist / kSpeedOfSound) * sample_rate) + 64;

  RirSet out;
  out.sample_rate = sample_rate;
  out.room = room;
  out.impulse_responses = Eigen::MatrixXd::Zero(kNumMics, ir_len);
  out.noise_impulse_responses = Eigen::MatrixXd::Zero(kNumMics, ir_len);
  for (int m = 0; m < kNumMics; ++m) {
    out.impulse_responses.row(m) =
        simulate_channel(room, room.source_pos, room.mic_positions[m], beta, max_order,
                         sample_rate, ir_len)
            .transpose();
    out.noise_impulse_responses.row(m) =
        simulate_channel(room, room.noise_pos, room.mic_positions[m], beta, max_order,
                         sample_rate, ir_len)
            .transpose();
  }
  if (!out.impulse_responses.allFinite() || !out.noise_impulse_responses.allFinite())
    throw std::runtime_error("simulate_rir: non-finite impulse response");
  return out;
}

}  // namespace diffilter
