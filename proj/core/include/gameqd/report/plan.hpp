#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gameqd/config.hpp"

namespace gameqd {

// A batch of runs: every strategy x replication on one RunConfig template,
// followed by an inter-variant tournament.
//
// Plan files are RunConfig key files with three extra keys:
//   strategies      = ranking, pareto, behavior, random
//   replications    = 5
//   tournament_reps = 1
struct ExperimentPlan {
  RunConfig base;
  std::vector<Strategy> strategies;
  int replications = 1;
  int tournament_reps = 1;

  void validate() const;
  // FNV-1a over the canonical plan text.
  std::string hash() const;
  std::string canonical_text() const;

  // The run of one strategy and replication. Replications share seeds across
  // strategies: master_seed = derive_seed(base seed, {kReplication, rep}).
  RunConfig run_config(Strategy strategy, int replication) const;
};

ExperimentPlan plan_from(const KeyValues& kv);
ExperimentPlan read_plan(const std::filesystem::path& path);

// runs/<strategy>/rep<k> under an output root.
std::filesystem::path run_dir(const std::filesystem::path& root, Strategy strategy, int replication);
// "<strategy>/r<k>", the group name used in tournament labels.
std::string run_label(Strategy strategy, int replication);

}  // namespace gameqd
