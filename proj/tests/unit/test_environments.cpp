#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "gameqd/config.hpp"
#include "gameqd/env/environment.hpp"
#include "gameqd/env/sims.hpp"
#include "gameqd/errors.hpp"
#include "gameqd/mlp.hpp"
#include "gameqd/seed.hpp"

using namespace gameqd;

namespace {

// Cell of each coordinate found by scanning cell bounds; out-of-range values
// go to the nearest edge cell.
std::vector<double> brute_raster(const Trajectory& t, const RasterBounds& b) {
  const int g = kRasterGrid;
  std::vector<double> grid(t.entity_count() * g * g, 0.0);
  auto scan = [g](double v, double lo, double hi) {
    const double w = (hi - lo) / g;
    if (v < lo) return 0;
    for (int c = 0; c < g; ++c) {
      if (v >= lo + c * w && v < lo + (c + 1) * w) return c;
    }
    return g - 1;
  };
  for (int s = 0; s < t.steps; ++s) {
    for (std::size_t e = 0; e < t.entity_count(); ++e) {
      const Vec2 p = t.at(s, e);
      const int ix = scan(p.x, b.min_x, b.max_x);
      const int iy = scan(p.y, b.min_y, b.max_y);
      grid[e * g * g + static_cast<std::size_t>(iy * g + ix)] += 1.0 / t.steps;
    }
  }
  return grid;
}

Trajectory single_entity(std::vector<Vec2> path) {
  Trajectory t;
  t.roles = {"thing"};
  t.steps = static_cast<int>(path.size());
  t.positions = std::move(path);
  return t;
}

}  // namespace

TEST_SUITE("environments") {

TEST_CASE("pong fitness is the point ratio") {
  CHECK(pong_fitness(0, 0).red == 0.5);
  CHECK(pong_fitness(3, 1).red == 0.75);
  CHECK(pong_fitness(2, 2).red == 0.5);
  CHECK(pong_fitness(3, 1).blue == 0.25);
}

TEST_CASE("cat and mouse fitness modes") {
  const double t_max = 5.0;
  CHECK(cat_mouse_fitness(true, 0.0, 0.0, 2.0, t_max).red == 1.0);
  CHECK(cat_mouse_fitness(true, t_max, 0.1, 2.0, t_max).red == 0.5);
  CHECK(cat_mouse_fitness(false, 0.0, 2.0, 2.0, t_max).red == 0.0);
  // Continuity at the caught/not-caught boundary.
  CHECK(cat_mouse_fitness(false, 0.0, 0.2, 2.0, t_max).red == doctest::Approx(0.5));
  CHECK(cat_mouse_fitness(false, 0.0, 1.1, 2.0, t_max).red == doctest::Approx(0.25));
  CHECK_THROWS_AS(cat_mouse_fitness(false, 0.0, 0.1, 0.2, t_max), ConfigError);
}

TEST_CASE("pursuit fitness modes") {
  const double t_max = 5.0;
  const std::array<EvaderOutcome, 2> both_now{{{0.0, 0.1, 1.0}, {0.0, 0.1, 1.0}}};
  const std::array<EvaderOutcome, 2> both_late{{{t_max, 0.1, 1.0}, {t_max, 0.1, 1.0}}};
  const std::array<EvaderOutcome, 2> none_moved{{{std::nullopt, 1.0, 1.0}, {std::nullopt, 0.8, 0.8}}};
  CHECK(pursuit_fitness(both_now, t_max).red == 1.0);
  CHECK(pursuit_fitness(both_late, t_max).red == 0.5);
  CHECK(pursuit_fitness(none_moved, t_max).red == 0.0);
  // One caught: 0.25 with no progress on the other, 0.5 at full progress.
  const std::array<EvaderOutcome, 2> one_far{{{1.0, 0.1, 1.0}, {std::nullopt, 0.9, 0.9}}};
  const std::array<EvaderOutcome, 2> one_close{{{1.0, 0.1, 1.0}, {std::nullopt, 0.15, 0.9}}};
  CHECK(pursuit_fitness(one_far, t_max).red == doctest::Approx(0.25));
  CHECK(pursuit_fitness(one_close, t_max).red == doctest::Approx(0.5));
  // None caught, both at full progress: top of the lowest mode.
  const std::array<EvaderOutcome, 2> none_close{{{std::nullopt, 0.15, 1.0}, {std::nullopt, 0.15, 0.9}}};
  CHECK(pursuit_fitness(none_close, t_max).red == doctest::Approx(0.25));
}

TEST_CASE("duels are pure and fitness components sum to one") {
  const EnvParams params;
  for (EnvId env : {EnvId::kPong, EnvId::kCatMouse, EnvId::kPursuit}) {
    Rng rng = make_rng(static_cast<std::uint64_t>(env) + 100);
    const Genome red = random_genome(env, Side::kRed, rng);
    const Genome blue = random_genome(env, Side::kBlue, rng);
    const DuelOutcome a = evaluate_duel(env, params, red, blue, 77);
    const DuelOutcome b = evaluate_duel(env, params, red, blue, 77);
    CHECK(a.fitness.red == b.fitness.red);
    CHECK(a.behavior_red == b.behavior_red);
    CHECK(a.trajectory == b.trajectory);
    CHECK(std::fabs(a.fitness.red + a.fitness.blue - 1.0) <= 1e-9);
    CHECK(a.behavior_red.size() == env_spec(env, params).descriptor_size());
  }
}

TEST_CASE("evaluate_pair seats genomes by side") {
  const EnvParams params;
  Rng rng = make_rng(5);
  const Genome red = random_genome(EnvId::kCatMouse, Side::kRed, rng);
  const Genome blue = random_genome(EnvId::kCatMouse, Side::kBlue, rng);
  CHECK(evaluate_pair(EnvId::kCatMouse, params, blue, red, 9).fitness.red ==
        evaluate_duel(EnvId::kCatMouse, params, red, blue, 9).fitness.red);
  CHECK_THROWS_AS(evaluate_pair(EnvId::kCatMouse, params, red, red, 9), UsageError);
  CHECK_THROWS_AS(evaluate_duel(EnvId::kPong, params, red, blue, 9), ConfigError);
}

TEST_CASE("pong with still paddles scores 0.5 when nobody scores") {
  const EnvParams params;
  const Genome red = zero_genome(EnvId::kPong, Side::kRed);
  const Genome blue = zero_genome(EnvId::kPong, Side::kBlue);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DuelOutcome out = evaluate_duel(EnvId::kPong, params, red, blue, seed);
    const bool scored = std::any_of(out.trajectory.events.begin(), out.trajectory.events.end(),
                                    [](const DuelEvent& e) { return e.kind == EventKind::kPoint; });
    if (!scored) CHECK(out.fitness.red == 0.5);
  }
}

TEST_CASE("pong ball speeds up by the factor on every rebound of a rally") {
  PongParams p;
  p.paddle_speed = 1.0;  // paddles can always reach the ball
  PongSim sim(p, 4);
  for (int s = 0; s < p.steps; ++s) {
    const double y = sim.ball().y;
    sim.step((y - sim.paddle(Side::kRed)) / p.paddle_speed, (y - sim.paddle(Side::kBlue)) / p.paddle_speed);
  }
  int rally = 0;
  int rebounds = 0;
  for (const auto& e : sim.trajectory().events) {
    if (e.kind == EventKind::kPoint) {
      rally = 0;
      continue;
    }
    ++rally;
    ++rebounds;
    CHECK(e.value == doctest::Approx(p.ball_speed * std::pow(p.speedup, rally)));
  }
  CHECK(rebounds > 5);
  CHECK(sim.points(Side::kRed) + sim.points(Side::kBlue) == 0);
  CHECK(pong_fitness(sim.points(Side::kRed), sim.points(Side::kBlue)).red == 0.5);
}

TEST_CASE("cat capture at the first step is worth 1 within one dt") {
  EnvParams params;
  params.cat_mouse.d_init = 0.205;
  const Genome cat = zero_genome(EnvId::kCatMouse, Side::kRed);
  const Genome mouse = zero_genome(EnvId::kCatMouse, Side::kBlue);
  const double dt = params.cat_mouse.dt;
  const double t_max = params.cat_mouse.steps * dt;
  int found = 0;
  for (std::uint64_t seed = 0; seed < 200 && found < 3; ++seed) {
    CatMouseSim sim(params.cat_mouse, seed);
    sim.step(0.0, 0.0);
    if (!sim.caught()) continue;
    ++found;
    CHECK(sim.catch_time() == doctest::Approx(dt));
    const DuelOutcome out = evaluate_duel(EnvId::kCatMouse, params, cat, mouse, seed);
    CHECK(out.fitness.red >= 1.0 - 0.5 * dt / t_max - 1e-12);
    CHECK(out.fitness.red <= 1.0);
  }
  CHECK(found > 0);
}

TEST_CASE("a stationary entity at the centre fills one cell") {
  const RasterBounds b{0.0, 0.0, 1.0, 1.0};
  const BehaviorDescriptor d =
      behavior_descriptor(single_entity(std::vector<Vec2>(50, Vec2{0.5, 0.5})), b, Side::kRed);
  int nonzero = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] != 0.0) {
      ++nonzero;
      CHECK(d[i] == 1.0);
      CHECK(i == static_cast<std::size_t>(8 * kRasterGrid + 8));
    }
  }
  CHECK(nonzero == 1);
}

TEST_CASE("sweeping one row spreads mass evenly over its cells") {
  const RasterBounds b{0.0, 0.0, 1.0, 1.0};
  const int steps = 1000;
  std::vector<Vec2> path;
  for (int s = 0; s < steps; ++s) path.push_back({(s + 0.5) / steps, 0.3});
  const Trajectory t = single_entity(path);
  const BehaviorDescriptor d = behavior_descriptor(t, b, Side::kRed);
  const int row = static_cast<int>(0.3 * kRasterGrid);
  for (int ix = 0; ix < kRasterGrid; ++ix) {
    const double mass = d[static_cast<std::size_t>(row * kRasterGrid + ix)];
    CHECK(std::fabs(mass - 1.0 / kRasterGrid) <= 1.0 / steps + 1e-12);
  }
  const std::vector<double> expected = brute_raster(t, b);
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("descriptors of real duels match the brute-force rasterizer") {
  const EnvParams params;
  for (EnvId env : {EnvId::kPong, EnvId::kCatMouse, EnvId::kPursuit}) {
    Rng rng = make_rng(static_cast<std::uint64_t>(env) + 1);
    const DuelOutcome out = evaluate_duel(env, params, random_genome(env, Side::kRed, rng),
                                          random_genome(env, Side::kBlue, rng), 3);
    const EnvSpec spec = env_spec(env, params);
    const std::vector<double> expected = brute_raster(out.trajectory, spec.raster);
    const auto got = out.behavior_red.values();
    REQUIRE(got.size() == expected.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::fabs(got[i] - expected[i]));
    CHECK(worst < 1e-9);
    // Each role's grid is a distribution over cells.
    const std::size_t cells = static_cast<std::size_t>(kRasterGrid * kRasterGrid);
    for (std::size_t r = 0; r < spec.roles.size(); ++r) {
      double sum = 0.0;
      for (std::size_t i = 0; i < cells; ++i) sum += got[r * cells + i];
      CHECK(sum == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("pursuit motion stays in the arena and out of the disc") {
  const PursuitParams p;
  Vec2 at{-0.9, 0.0};
  for (int s = 0; s < 400; ++s) {
    at = PursuitSim::move(p, at, s < 200 ? 0.0 : 2.5);
    CHECK(std::hypot(at.x, at.y) >= p.disc_radius - 1e-12);
    CHECK(std::fabs(at.x) <= p.arena_half);
    CHECK(std::fabs(at.y) <= p.arena_half);
  }
}

}
