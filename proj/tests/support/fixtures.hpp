#pragma once

#include "gameqd/config.hpp"

namespace support {

// Small, fast run configuration: short duels and a handful of evaluations.
inline gameqd::RunConfig tiny_config(gameqd::Strategy strategy = gameqd::Strategy::kRanking,
                                     gameqd::EnvId env = gameqd::EnvId::kCatMouse) {
  gameqd::RunConfig c;
  c.env = env;
  c.strategy = strategy;
  c.master_seed = 1234;
  c.n_gen = 2;
  c.n_task = 3;
  c.n_cell = 2;
  c.n_budget = 24;
  c.n_init = 4;
  c.env_params.cat_mouse.steps = 60;
  c.env_params.pong.steps = 120;
  c.env_params.pursuit.steps = 60;
  c.validate();
  return c;
}

}  // namespace support
