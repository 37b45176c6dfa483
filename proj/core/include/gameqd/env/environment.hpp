#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gameqd/config.hpp"
#include "gameqd/env/trajectory.hpp"
#include "gameqd/types.hpp"

namespace gameqd {

inline constexpr int kRasterGrid = 16;

struct RasterBounds {
  double min_x;
  double min_y;
  double max_x;
  double max_y;
};

// Static description of an environment under a given parameter set.
struct EnvSpec {
  EnvId id;
  int steps;
  std::vector<std::string> roles;
  RasterBounds raster;
  // (kind, entity) pairs that can occur; one CSV flag column each.
  std::vector<std::pair<EventKind, int>> event_columns;

  std::size_t descriptor_size() const noexcept {
    return roles.size() * kRasterGrid * kRasterGrid;
  }
};

EnvSpec env_spec(EnvId env, const EnvParams& params);

struct DuelOutcome {
  FitnessPair fitness;
  BehaviorDescriptor behavior_red;
  BehaviorDescriptor behavior_blue;
  Trajectory trajectory;
  std::uint64_t duel_seed = 0;
};

// Pure function of its arguments. Throws EvaluationError on non-finite state.
DuelOutcome evaluate_duel(EnvId env, const EnvParams& params, const Genome& red,
                          const Genome& blue, std::uint64_t duel_seed);

// Process-wide number of evaluate_duel calls so far, for instrumentation.
std::uint64_t duels_evaluated() noexcept;

// Red scores with the left paddle.
FitnessPair pong_fitness(int points_red, int points_blue);

// Cat is Red. t_max is the duel length in seconds.
FitnessPair cat_mouse_fitness(bool caught, double t_catch, double d_min, double d_init,
                              double t_max, double d_thresh = 0.2);

struct EvaderOutcome {
  std::optional<double> catch_time;
  double d_min = 0.0;
  double d_init = 0.0;
};

// Pursuers are Red.
FitnessPair pursuit_fitness(std::span<const EvaderOutcome> evaders, double t_max,
                            double d_thresh = 0.15);

// G x G occupancy grid per role (G = kRasterGrid), concatenated in role order.
// Cells are row-major with y as the row: index = role*G*G + iy*G + ix.
// Positions outside the raster bounds fall into the nearest edge cell. The
// perspective only decides which archive the descriptor feeds.
BehaviorDescriptor behavior_descriptor(const Trajectory& trajectory, const RasterBounds& raster,
                                       Side perspective);

}  // namespace gameqd

namespace gameqd {

// Seats `a` and `b` by their sides (one must be Red, the other Blue).
DuelOutcome evaluate_pair(EnvId env, const EnvParams& params, const Genome& a, const Genome& b,
                          std::uint64_t duel_seed);

}  // namespace gameqd
