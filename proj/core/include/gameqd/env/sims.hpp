#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "gameqd/config.hpp"
#include "gameqd/env/environment.hpp"
#include "gameqd/env/trajectory.hpp"
#include "gameqd/seed.hpp"
#include "gameqd/types.hpp"

namespace gameqd {

// Step-level simulators. evaluate_duel drives them with MLP policies; tests
// drive them with scripted actions. Actions are clamped to [-1, 1].

class PongSim {
 public:
  static constexpr std::size_t kObs = 6;

  PongSim(const PongParams& params, std::uint64_t seed);

  // Blue sees a mirrored arena so both sides observe "own paddle first".
  void observe(Side side, std::span<double, kObs> out) const;
  void step(double action_left, double action_right);

  int step_index() const noexcept { return step_; }
  int points(Side side) const noexcept { return points_[static_cast<int>(side)]; }
  Vec2 ball() const noexcept { return ball_; }
  Vec2 ball_velocity() const noexcept { return velocity_; }
  double ball_speed() const noexcept { return speed_; }
  int rally_rebounds() const noexcept { return rally_rebounds_; }
  double paddle(Side side) const noexcept { return paddle_[static_cast<int>(side)]; }
  const Trajectory& trajectory() const noexcept { return trajectory_; }
  Trajectory take_trajectory() { return std::move(trajectory_); }

 private:
  void serve(Side toward);
  void record();

  PongParams p_;
  Rng rng_;
  Vec2 ball_;
  Vec2 velocity_;
  double speed_ = 0.0;
  std::array<double, 2> paddle_{0.5, 0.5};
  std::array<int, 2> points_{0, 0};
  int rally_rebounds_ = 0;
  int step_ = 0;
  Trajectory trajectory_;
};

class CatMouseSim {
 public:
  static constexpr std::size_t kObs = 5;

  CatMouseSim(const CatMouseParams& params, std::uint64_t seed);

  void observe(std::span<double, kObs> out) const;
  void step(double cat_action, double mouse_action);

  int step_index() const noexcept { return step_; }
  Vec2 cat() const noexcept { return cat_; }
  Vec2 mouse() const noexcept { return mouse_; }
  double cat_heading() const noexcept { return heading_; }
  bool caught() const noexcept { return catch_step_ >= 0; }
  // Time of the first capture, in seconds.
  double catch_time() const noexcept { return catch_step_ * p_.dt; }
  double d_min() const noexcept { return d_min_; }
  double t_max() const noexcept { return p_.steps * p_.dt; }
  const Trajectory& trajectory() const noexcept { return trajectory_; }
  Trajectory take_trajectory() { return std::move(trajectory_); }

 private:
  void check_capture(int time_index);

  CatMouseParams p_;
  Vec2 cat_;
  Vec2 mouse_;
  double heading_ = 0.0;
  double d_min_;
  int catch_step_ = -1;
  int step_ = 0;
  Trajectory trajectory_;
};

class PursuitSim {
 public:
  static constexpr std::size_t kObs = 11;

  PursuitSim(const PursuitParams& params, std::uint64_t seed);

  // Observation of agent `index` (0 or 1) on `side`.
  void observe(Side side, int index, std::span<double, kObs> out) const;
  void step(std::array<double, 2> pursuer_actions, std::array<double, 2> evader_actions);

  int step_index() const noexcept { return step_; }
  Vec2 pursuer(int i) const noexcept { return pursuers_[i]; }
  Vec2 evader(int i) const noexcept { return evaders_[i]; }
  bool caught(int i) const noexcept { return catch_step_[i] >= 0; }
  std::array<EvaderOutcome, 2> evader_outcomes() const;
  double t_max() const noexcept { return p_.steps * p_.dt; }
  const Trajectory& trajectory() const noexcept { return trajectory_; }
  Trajectory take_trajectory() { return std::move(trajectory_); }

  // One motion update: clamp to the arena, project out of the central disc.
  static Vec2 move(const PursuitParams& params, Vec2 from, double heading);

 private:
  double nearest_pursuer(int evader) const;
  void check_captures(int time_index);

  PursuitParams p_;
  std::array<Vec2, 2> pursuers_;
  std::array<Vec2, 2> evaders_;
  std::array<double, 2> d_init_{};
  std::array<double, 2> d_min_{};
  std::array<int, 2> catch_step_{-1, -1};
  int step_ = 0;
  Trajectory trajectory_;
};

}  // namespace gameqd
