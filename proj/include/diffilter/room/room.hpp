#pragma once

#include <array>

#include <Eigen/Dense>

#include "diffilter/util/rng.hpp"

namespace diffilter {

inline constexpr double kSpeedOfSound = 343.0;  // m/s
inline constexpr int kNumMics = 4;
inline constexpr double kMicArrayDiameter = 0.10;  // planar circular layout, m

// Sampled shoebox room. Distance constraints apply to the four lateral
// walls; the height range [2,3] m makes a 1.5 m clearance to floor and
// ceiling simultaneously infeasible, so vertical placement only requires
// being strictly inside with a small margin.
struct RoomSpec {
  double length = 0, width = 0, height = 0;  // m
  double rt60 = 0;                           // s
  Eigen::Vector3d source_pos;
  Eigen::Vector3d noise_pos;  // second source position for the noise image
  std::array<Eigen::Vector3d, kNumMics> mic_positions;
  std::uint64_t seed = 0;

  double min_source_wall_distance() const;
  double min_mic_wall_distance() const;
  bool inside(const Eigen::Vector3d& p) const;
  void validate() const;
};

// Uniform draws: length [3,8], width [3,5], height [2,3], rt60 [0.2,0.6] s;
// source >= 1.5 m and every mic >= 1 m from each lateral wall.
RoomSpec sample_room(Rng& rng);

// Simulated channel impulse responses for one room: one row per microphone,
// for both the speech source and the noise source position.
struct RirSet {
  Eigen::MatrixXd impulse_responses;        // kNumMics x L, speech source
  Eigen::MatrixXd noise_impulse_responses;  // kNumMics x L, noise source
  int sample_rate = 16000;
  RoomSpec room;
};

// Image-source method with Sabine-derived uniform absorption; nearest-sample
// tap placement so the direct path lands at round(d/c*fs). absorption_override
// replaces the Sabine-derived coefficient when positive (1 = anechoic).
RirSet simulate_rir(const RoomSpec& room, int sample_rate = 16000,
                    double absorption_override = 0.0);

// Uniform absorption coefficient whose Sabine RT60 equals room.rt60.
double sabine_absorption(const RoomSpec& room);

// Backward-integrated (Schroeder) decay time estimate, fit on [-5,-25] dB.
double estimate_rt60(const Eigen::VectorXd& ir, int sample_rate);

}  // namespace diffilter
