#include "gameqd/env/sims.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace gameqd {
namespace {

constexpr double kPi = std::numbers::pi;

double clamp_action(double a) { return std::clamp(a, -1.0, 1.0); }

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double wrap_angle(double a) { return std::remainder(a, 2.0 * kPi); }

}  // namespace

// ---------------------------------------------------------------------------
// Pong: unit square, Red = left paddle, Blue = right paddle.

PongSim::PongSim(const PongParams& params, std::uint64_t seed) : p_(params), rng_(seed) {
  trajectory_.roles = {"ball", "paddle_left", "paddle_right"};
  trajectory_.positions.reserve(static_cast<std::size_t>(p_.steps) * 3);
  std::bernoulli_distribution coin(0.5);
  serve(coin(rng_) ? Side::kRed : Side::kBlue);
}

void PongSim::serve(Side toward) {
  const double half = p_.serve_half_angle_deg * kPi / 180.0;
  std::uniform_real_distribution<double> angle(-half, half);
  const double theta = angle(rng_);
  const double dir = toward == Side::kRed ? -1.0 : 1.0;
  ball_ = {0.5, 0.5};
  speed_ = p_.ball_speed;
  velocity_ = {dir * speed_ * std::cos(theta), speed_ * std::sin(theta)};
  rally_rebounds_ = 0;
}

void PongSim::observe(Side side, std::span<double, kObs> out) const {
  const double vx = std::clamp(velocity_.x / p_.velocity_norm, -1.0, 1.0);
  const double vy = std::clamp(velocity_.y / p_.velocity_norm, -1.0, 1.0);
  const double left = 2.0 * paddle_[0] - 1.0;
  const double right = 2.0 * paddle_[1] - 1.0;
  if (side == Side::kRed) {
    out[0] = 2.0 * ball_.x - 1.0;
    out[2] = vx;
    out[4] = left;
    out[5] = right;
  } else {
    out[0] = 1.0 - 2.0 * ball_.x;
    out[2] = -vx;
    out[4] = right;
    out[5] = left;
  }
  out[1] = 2.0 * ball_.y - 1.0;
  out[3] = vy;
}

void PongSim::step(double action_left, double action_right) {
  const double half_h = p_.paddle_height / 2.0;
  const double r = p_.ball_radius;
  paddle_[0] = std::clamp(paddle_[0] + p_.paddle_speed * clamp_action(action_left), half_h, 1.0 - half_h);
  paddle_[1] = std::clamp(paddle_[1] + p_.paddle_speed * clamp_action(action_right), half_h, 1.0 - half_h);

  const Vec2 from = ball_;
  Vec2 to{from.x + velocity_.x, from.y + velocity_.y};
  Vec2 vel = velocity_;

  // Specular reflection off the top and bottom walls.
  for (int guard = 0; guard < 8 && (to.y < r || to.y > 1.0 - r); ++guard) {
    to.y = to.y < r ? 2.0 * r - to.y : 2.0 * (1.0 - r) - to.y;
    vel.y = -vel.y;
  }

  auto try_rebound = [&](int paddle, double plane, bool moving_left) {
    const bool crosses = moving_left ? (from.x >= plane && to.x < plane)
                                     : (from.x <= plane && to.x > plane);
    if (!crosses) return;
    const double tau = (from.x - plane) / (from.x - to.x);
    const double y_hit = from.y + tau * (to.y - from.y);
    if (std::abs(y_hit - paddle_[paddle]) > half_h + r) return;
    to.x = 2.0 * plane - to.x;
    vel.x = -vel.x;
    speed_ *= p_.speedup;
    const double norm = std::hypot(vel.x, vel.y);
    vel = {vel.x / norm * speed_, vel.y / norm * speed_};
    ++rally_rebounds_;
    trajectory_.events.push_back({step_, paddle + 1, EventKind::kRebound, speed_});
  };
  if (vel.x < 0.0) {
    try_rebound(0, p_.paddle_left_x + r, true);
  } else if (vel.x > 0.0) {
    try_rebound(1, p_.paddle_right_x - r, false);
  }

  if (to.x < 0.0) {
    ++points_[1];
    trajectory_.events.push_back({step_, 2, EventKind::kPoint, 0.0});
    serve(Side::kRed);
  } else if (to.x > 1.0) {
    ++points_[0];
    trajectory_.events.push_back({step_, 1, EventKind::kPoint, 0.0});
    serve(Side::kBlue);
  } else {
    ball_ = to;
    velocity_ = vel;
  }
  record();
  ++step_;
}

void PongSim::record() {
  trajectory_.positions.push_back(ball_);
  trajectory_.positions.push_back({p_.paddle_left_x, paddle_[0]});
  trajectory_.positions.push_back({p_.paddle_right_x, paddle_[1]});
  ++trajectory_.steps;
}

// ---------------------------------------------------------------------------
// Cat-and-mouse: unbounded plane, cat (Red) starts at the origin heading +x.

CatMouseSim::CatMouseSim(const CatMouseParams& params, std::uint64_t seed) : p_(params) {
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  const double a = angle(rng);
  cat_ = {0.0, 0.0};
  mouse_ = {p_.d_init * std::cos(a), p_.d_init * std::sin(a)};
  d_min_ = distance(cat_, mouse_);
  trajectory_.roles = {"cat", "mouse"};
  trajectory_.positions.reserve(static_cast<std::size_t>(p_.steps) * 2);
  check_capture(0);
}

void CatMouseSim::observe(std::span<double, kObs> out) const {
  out[0] = cat_.x / p_.position_scale;
  out[1] = cat_.y / p_.position_scale;
  out[2] = wrap_angle(heading_) / kPi;
  out[3] = mouse_.x / p_.position_scale;
  out[4] = mouse_.y / p_.position_scale;
}

void CatMouseSim::step(double cat_action, double mouse_action) {
  heading_ = wrap_angle(heading_ + p_.cat_turn_rate * clamp_action(cat_action) * p_.dt);
  cat_.x += p_.cat_speed * p_.dt * std::cos(heading_);
  cat_.y += p_.cat_speed * p_.dt * std::sin(heading_);
  const double mouse_heading = kPi * clamp_action(mouse_action);
  mouse_.x += p_.mouse_speed * p_.dt * std::cos(mouse_heading);
  mouse_.y += p_.mouse_speed * p_.dt * std::sin(mouse_heading);

  trajectory_.positions.push_back(cat_);
  trajectory_.positions.push_back(mouse_);
  ++trajectory_.steps;
  check_capture(step_ + 1);
  ++step_;
}

void CatMouseSim::check_capture(int time_index) {
  if (caught()) return;
  const double d = distance(cat_, mouse_);
  d_min_ = std::min(d_min_, d);
  if (d < p_.d_thresh) {
    catch_step_ = time_index;
    trajectory_.events.push_back({std::max(time_index - 1, 0), 1, EventKind::kCapture, 0.0});
  }
}

// ---------------------------------------------------------------------------
// Pursuers-and-evaders: square arena with a blocking central disc.

PursuitSim::PursuitSim(const PursuitParams& params, std::uint64_t seed) : p_(params) {
  Rng rng(seed);
  const double edge = p_.arena_half;
  std::uniform_real_distribution<double> band(p_.spawn_inner_x, edge);
  std::uniform_real_distribution<double> vertical(-edge, edge);
  for (auto& pos : pursuers_) pos = {-band(rng), vertical(rng)};
  for (auto& pos : evaders_) pos = {band(rng), vertical(rng)};
  for (int e = 0; e < 2; ++e) {
    d_init_[e] = nearest_pursuer(e);
    d_min_[e] = d_init_[e];
  }
  trajectory_.roles = {"pursuer_1", "pursuer_2", "evader_1", "evader_2"};
  trajectory_.positions.reserve(static_cast<std::size_t>(p_.steps) * 4);
  check_captures(0);
}

double PursuitSim::nearest_pursuer(int evader) const {
  return std::min(distance(pursuers_[0], evaders_[evader]), distance(pursuers_[1], evaders_[evader]));
}

Vec2 PursuitSim::move(const PursuitParams& params, Vec2 from, double heading) {
  const double h = params.arena_half;
  Vec2 to{std::clamp(from.x + params.speed * params.dt * std::cos(heading), -h, h),
          std::clamp(from.y + params.speed * params.dt * std::sin(heading), -h, h)};
  const double norm = std::hypot(to.x, to.y);
  if (norm < params.disc_radius) {
    if (norm > 0.0) {
      to = {to.x / norm * params.disc_radius, to.y / norm * params.disc_radius};
    } else {
      const double back = std::hypot(from.x, from.y);
      to = {from.x / back * params.disc_radius, from.y / back * params.disc_radius};
    }
  }
  return to;
}

void PursuitSim::observe(Side side, int index, std::span<double, kObs> out) const {
  const auto& own = side == Side::kRed ? pursuers_ : evaders_;
  const auto& other = side == Side::kRed ? evaders_ : pursuers_;
  const Vec2 self = own[index];
  const Vec2 mate = own[1 - index];
  const double rel = 2.0 * p_.arena_half;
  out[0] = self.x / p_.arena_half;
  out[1] = self.y / p_.arena_half;
  out[2] = (other[0].x - self.x) / rel;
  out[3] = (other[0].y - self.y) / rel;
  out[4] = (other[1].x - self.x) / rel;
  out[5] = (other[1].y - self.y) / rel;
  out[6] = (mate.x - self.x) / rel;
  out[7] = (mate.y - self.y) / rel;
  out[8] = index == 0 ? 1.0 : -1.0;
  out[9] = caught(0) ? 1.0 : 0.0;
  out[10] = caught(1) ? 1.0 : 0.0;
}

void PursuitSim::step(std::array<double, 2> pursuer_actions, std::array<double, 2> evader_actions) {
  for (int i = 0; i < 2; ++i) {
    pursuers_[i] = move(p_, pursuers_[i], kPi * clamp_action(pursuer_actions[i]));
  }
  for (int i = 0; i < 2; ++i) {
    if (!caught(i)) evaders_[i] = move(p_, evaders_[i], kPi * clamp_action(evader_actions[i]));
  }
  for (const auto& pos : pursuers_) trajectory_.positions.push_back(pos);
  for (const auto& pos : evaders_) trajectory_.positions.push_back(pos);
  ++trajectory_.steps;
  check_captures(step_ + 1);
  ++step_;
}

void PursuitSim::check_captures(int time_index) {
  for (int e = 0; e < 2; ++e) {
    if (caught(e)) continue;
    const double d = nearest_pursuer(e);
    d_min_[e] = std::min(d_min_[e], d);
    if (d < p_.d_thresh) {
      catch_step_[e] = time_index;
      trajectory_.events.push_back({std::max(time_index - 1, 0), 2 + e, EventKind::kCapture, 0.0});
    }
  }
}

std::array<EvaderOutcome, 2> PursuitSim::evader_outcomes() const {
  std::array<EvaderOutcome, 2> out;
  for (int e = 0; e < 2; ++e) {
    if (caught(e)) out[e].catch_time = catch_step_[e] * p_.dt;
    out[e].d_min = d_min_[e];
    out[e].d_init = d_init_[e];
  }
  return out;
}

}  // namespace gameqd
