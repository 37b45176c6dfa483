#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gameqd/archive/growing_archive.hpp"
#include "gameqd/config.hpp"
#include "gameqd/mtmb/mtmb.hpp"

namespace gameqd {

struct EliteId {
  std::size_t task;
  std::size_t cell;

  friend bool operator==(const EliteId&, const EliteId&) = default;
};

// Every elite of every task archive, task-major then cell order. The position
// in this list is the "elite index" used for tie-breaking.
struct ElitePool {
  std::vector<EliteId> ids;
  std::vector<const EliteEntry*> entries;

  std::size_t size() const noexcept { return ids.size(); }
};

ElitePool gather_elites(std::span<const GrowingArchive> archives);

// Fitness of every (candidate, old task) pair from the candidates' side.
struct TournamentLog {
  std::size_t rows = 0;
  std::size_t columns = 0;
  std::vector<double> fitness;                // rows x columns, row-major
  // Duel behaviors seen from the old tasks' side, same layout; these seed
  // the next generation's archives.
  std::vector<BehaviorDescriptor> behaviors;

  double at(std::size_t r, std::size_t c) const { return fitness[r * columns + c]; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(fitness).subspan(r * columns, columns);
  }
};

// Shared inputs for every selector.
struct SelectionContext {
  const RunConfig* config = nullptr;
  int generation = 1;
  int workers = 1;
};

struct SelectionResult {
  TaskSet tasks;
  // Tournament evaluations keyed for the next generation: fitness is from the
  // old tasks' side (1 - the selecting tournament value).
  BootstrapSet bootstrap;
  std::vector<std::size_t> selected;       // indices into the elite pool
  std::vector<std::size_t> cluster_sizes;  // empty when no clustering happened
  std::size_t tournament_evaluations = 0;
  // Selecting-side tournament values behind each bootstrap record, same order.
  std::vector<double> bootstrap_source_fitness;
  std::vector<std::string> warnings;
};

// Duels every candidate against every old task. Seeds are
// derive_seed(master, {kSelectionDuel, generation, row, column}).
TournamentLog run_tournament(std::span<const Genome> candidates, const TaskSet& old_tasks,
                             const SelectionContext& ctx, bool keep_behaviors);

SelectionResult select_behavior(std::span<const GrowingArchive> archives, const TaskSet& old_tasks,
                                const SelectionContext& ctx);
SelectionResult select_random(std::span<const GrowingArchive> archives, const TaskSet& old_tasks,
                              const SelectionContext& ctx);
SelectionResult select_ranking(std::span<const GrowingArchive> archives, const TaskSet& old_tasks,
                               const SelectionContext& ctx);
SelectionResult select_pareto(std::span<const GrowingArchive> archives, const TaskSet& old_tasks,
                              const SelectionContext& ctx);

SelectionResult select_tasks(Strategy strategy, std::span<const GrowingArchive> archives,
                             const TaskSet& old_tasks, const SelectionContext& ctx);

// Selection kernels on gathered data. Each returns distinct indices (fewer
// than n_task only when the input is smaller); callers pad afterwards.
struct Picked {
  std::vector<std::size_t> selected;
  std::vector<std::size_t> cluster_sizes;
};

// k-means over behaviors; per cluster the highest stored fitness.
Picked pick_by_behavior(std::span<const std::vector<double>> behaviors, std::span<const double> fitness,
                        std::size_t n_task, std::uint64_t seed);
// Uniform sample without replacement.
Picked pick_at_random(std::size_t pool, std::size_t n_task, std::uint64_t seed);
// k-means over ranking vectors of the tournament rows; per cluster the
// highest mean tournament fitness.
Picked pick_by_ranking(const TournamentLog& log, std::size_t n_task, std::uint64_t seed);
// NSGA-III over the tournament rows as objective vectors.
Picked pick_by_pareto(const TournamentLog& log, std::size_t n_task, std::uint64_t seed);

// Picks, per non-empty cluster (in cluster order), the member with the
// highest quality; ties go to the lowest index.
std::vector<std::size_t> best_per_cluster(std::span<const std::size_t> assignment,
                                          std::size_t clusters, std::span<const double> quality);

}  // namespace gameqd
