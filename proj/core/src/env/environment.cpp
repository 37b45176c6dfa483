#include "gameqd/env/environment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <string>

#include "gameqd/env/sims.hpp"
#include "gameqd/errors.hpp"
#include "gameqd/mlp.hpp"

namespace gameqd {
namespace {

std::atomic<std::uint64_t> g_duels{0};

void check_finite(const Trajectory& t, EnvId env) {
  const std::size_t n = t.entity_count();
  const std::size_t offset = t.positions.size() - n;
  for (std::size_t i = offset; i < t.positions.size(); ++i) {
    if (!std::isfinite(t.positions[i].x) || !std::isfinite(t.positions[i].y)) {
      const int step = t.steps - 1;
      throw EvaluationError(std::string(to_string(env)), step,
                            "non-finite state in " + std::string(to_string(env)) +
                                " at timestep " + std::to_string(step));
    }
  }
}

void check_genome(const Genome& g, EnvId env, Side side) {
  if (g.env() != env || g.side() != side) {
    throw ConfigError("genome (" + std::string(to_string(g.env())) + ", " +
                      std::string(to_string(g.side())) + ") does not fit the " +
                      std::string(to_string(side)) + " seat of " + std::string(to_string(env)));
  }
}

struct Played {
  FitnessPair fitness;
  Trajectory trajectory;
};

Played play_pong(const PongParams& p, const Genome& red, const Genome& blue, std::uint64_t seed) {
  PongSim sim(p, seed);
  const MlpPolicy left(red);
  const MlpPolicy right(blue);
  std::array<double, PongSim::kObs> obs{};
  std::array<double, 1> a_left{};
  std::array<double, 1> a_right{};
  for (int s = 0; s < p.steps; ++s) {
    sim.observe(Side::kRed, obs);
    left.act(obs, a_left);
    sim.observe(Side::kBlue, obs);
    right.act(obs, a_right);
    sim.step(a_left[0], a_right[0]);
    check_finite(sim.trajectory(), EnvId::kPong);
  }
  const FitnessPair f = pong_fitness(sim.points(Side::kRed), sim.points(Side::kBlue));
  return {f, sim.take_trajectory()};
}

Played play_cat_mouse(const CatMouseParams& p, const Genome& red, const Genome& blue,
                      std::uint64_t seed) {
  CatMouseSim sim(p, seed);
  const MlpPolicy cat(red);
  const MlpPolicy mouse(blue);
  std::array<double, CatMouseSim::kObs> obs{};
  std::array<double, 1> a_cat{};
  std::array<double, 1> a_mouse{};
  for (int s = 0; s < p.steps; ++s) {
    sim.observe(obs);
    cat.act(obs, a_cat);
    mouse.act(obs, a_mouse);
    sim.step(a_cat[0], a_mouse[0]);
    check_finite(sim.trajectory(), EnvId::kCatMouse);
  }
  const FitnessPair f = cat_mouse_fitness(sim.caught(), sim.caught() ? sim.catch_time() : 0.0,
                                          sim.d_min(), p.d_init, sim.t_max(), p.d_thresh);
  return {f, sim.take_trajectory()};
}

Played play_pursuit(const PursuitParams& p, const Genome& red, const Genome& blue,
                    std::uint64_t seed) {
  PursuitSim sim(p, seed);
  const MlpPolicy pursuers(red);
  const MlpPolicy evaders(blue);
  std::array<double, PursuitSim::kObs> obs{};
  std::array<double, 1> out{};
  std::array<double, 2> a_pursuers{};
  std::array<double, 2> a_evaders{};
  for (int s = 0; s < p.steps; ++s) {
    for (int i = 0; i < 2; ++i) {
      sim.observe(Side::kRed, i, obs);
      pursuers.act(obs, out);
      a_pursuers[i] = out[0];
      sim.observe(Side::kBlue, i, obs);
      evaders.act(obs, out);
      a_evaders[i] = out[0];
    }
    sim.step(a_pursuers, a_evaders);
    check_finite(sim.trajectory(), EnvId::kPursuit);
  }
  const auto evaders_out = sim.evader_outcomes();
  const FitnessPair f = pursuit_fitness(evaders_out, sim.t_max(), p.d_thresh);
  return {f, sim.take_trajectory()};
}

}  // namespace

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::kPoint: return "point";
    case EventKind::kRebound: return "rebound";
    case EventKind::kCapture: return "capture";
  }
  return "unknown";
}

bool operator==(const Vec2& a, const Vec2& b) noexcept { return a.x == b.x && a.y == b.y; }

bool operator==(const Trajectory& a, const Trajectory& b) noexcept {
  return a.steps == b.steps && a.roles == b.roles && a.positions == b.positions &&
         a.events == b.events;
}

EnvSpec env_spec(EnvId env, const EnvParams& params) {
  switch (env) {
    case EnvId::kPong:
      return {env,
              params.pong.steps,
              {"ball", "paddle_left", "paddle_right"},
              {0.0, 0.0, 1.0, 1.0},
              {{EventKind::kRebound, 1},
               {EventKind::kRebound, 2},
               {EventKind::kPoint, 1},
               {EventKind::kPoint, 2}}};
    case EnvId::kCatMouse: {
      const double s = params.cat_mouse.position_scale;
      return {env, params.cat_mouse.steps, {"cat", "mouse"}, {-s, -s, s, s}, {{EventKind::kCapture, 1}}};
    }
    case EnvId::kPursuit: {
      const double h = params.pursuit.arena_half;
      return {env,
              params.pursuit.steps,
              {"pursuer_1", "pursuer_2", "evader_1", "evader_2"},
              {-h, -h, h, h},
              {{EventKind::kCapture, 2}, {EventKind::kCapture, 3}}};
    }
  }
  throw ConfigError("unknown environment id");
}

FitnessPair pong_fitness(int points_red, int points_blue) {
  const int total = points_red + points_blue;
  if (total == 0) return FitnessPair::from_red(0.5);
  return FitnessPair::from_red(static_cast<double>(points_red) / total);
}

FitnessPair cat_mouse_fitness(bool caught, double t_catch, double d_min, double d_init,
                              double t_max, double d_thresh) {
  if (d_init <= d_thresh) {
    throw ConfigError("cat_mouse: initial distance must exceed the capture threshold");
  }
  if (caught) {
    return FitnessPair::from_red(1.0 - 0.5 * std::clamp(t_catch / t_max, 0.0, 1.0));
  }
  const double progress = (d_init - d_min) / (d_init - d_thresh);
  return FitnessPair::from_red(std::clamp(0.5 * progress, 0.0, 0.5));
}

FitnessPair pursuit_fitness(std::span<const EvaderOutcome> evaders, double t_max, double d_thresh) {
  auto progress = [d_thresh](const EvaderOutcome& e) {
    if (e.d_init <= d_thresh) {
      throw ConfigError("pursuit: initial distance must exceed the capture threshold");
    }
    return std::clamp((e.d_init - e.d_min) / (e.d_init - d_thresh), 0.0, 1.0);
  };
  double caught_time = 0.0;
  int caught = 0;
  double uncaught_progress = 0.0;
  for (const auto& e : evaders) {
    if (e.catch_time) {
      ++caught;
      caught_time += std::clamp(*e.catch_time, 0.0, t_max);
    } else {
      uncaught_progress += progress(e);
    }
  }
  const double n = static_cast<double>(evaders.size());
  if (caught == static_cast<int>(evaders.size())) {
    return FitnessPair::from_red(1.0 - 0.5 * caught_time / (n * t_max));
  }
  if (caught > 0) {
    // Linear in the normalized progress towards the remaining evader(s).
    return FitnessPair::from_red(0.25 + 0.25 * uncaught_progress / (n - caught));
  }
  return FitnessPair::from_red(0.25 * uncaught_progress / n);
}

BehaviorDescriptor behavior_descriptor(const Trajectory& trajectory, const RasterBounds& raster,
                                       Side /*perspective*/) {
  constexpr int g = kRasterGrid;
  const std::size_t roles = trajectory.entity_count();
  std::vector<double> grid(roles * g * g, 0.0);
  if (trajectory.steps == 0) return BehaviorDescriptor(std::move(grid));
  auto cell = [](double v, double lo, double hi) {
    const int c = static_cast<int>(std::floor((v - lo) / (hi - lo) * g));
    return std::clamp(c, 0, g - 1);
  };
  for (int s = 0; s < trajectory.steps; ++s) {
    for (std::size_t r = 0; r < roles; ++r) {
      const Vec2& p = trajectory.at(s, r);
      const int ix = cell(p.x, raster.min_x, raster.max_x);
      const int iy = cell(p.y, raster.min_y, raster.max_y);
      grid[r * g * g + static_cast<std::size_t>(iy) * g + ix] += 1.0;
    }
  }
  for (double& v : grid) v /= trajectory.steps;
  return BehaviorDescriptor(std::move(grid));
}

std::uint64_t duels_evaluated() noexcept { return g_duels.load(std::memory_order_relaxed); }

DuelOutcome evaluate_duel(EnvId env, const EnvParams& params, const Genome& red, const Genome& blue,
                          std::uint64_t duel_seed) {
  g_duels.fetch_add(1, std::memory_order_relaxed);
  check_genome(red, env, Side::kRed);
  check_genome(blue, env, Side::kBlue);
  Played played;
  switch (env) {
    case EnvId::kPong: played = play_pong(params.pong, red, blue, duel_seed); break;
    case EnvId::kCatMouse: played = play_cat_mouse(params.cat_mouse, red, blue, duel_seed); break;
    case EnvId::kPursuit: played = play_pursuit(params.pursuit, red, blue, duel_seed); break;
  }
  const EnvSpec spec = env_spec(env, params);
  BehaviorDescriptor behavior = behavior_descriptor(played.trajectory, spec.raster, Side::kRed);
  DuelOutcome out;
  out.fitness = played.fitness;
  out.behavior_red = behavior;
  out.behavior_blue = behavior;
  out.trajectory = std::move(played.trajectory);
  out.duel_seed = duel_seed;
  return out;
}

}  // namespace gameqd

namespace gameqd {

DuelOutcome evaluate_pair(EnvId env, const EnvParams& params, const Genome& a, const Genome& b,
                          std::uint64_t duel_seed) {
  if (a.side() == b.side()) {
    throw UsageError("evaluate_pair: both genomes play " + std::string(to_string(a.side())));
  }
  return a.side() == Side::kRed ? evaluate_duel(env, params, a, b, duel_seed)
                                : evaluate_duel(env, params, b, a, duel_seed);
}

}  // namespace gameqd
