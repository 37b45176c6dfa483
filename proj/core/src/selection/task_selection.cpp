#include "gameqd/selection/task_selection.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "gameqd/env/environment.hpp"
#include "gameqd/errors.hpp"
#include "gameqd/parallel.hpp"
#include "gameqd/seed.hpp"
#include "gameqd/selection/kmeans.hpp"
#include "gameqd/selection/nsga3.hpp"
#include "gameqd/selection/ranking.hpp"

namespace gameqd {
namespace {

std::uint64_t selection_seed(const SelectionContext& ctx, std::uint64_t purpose) {
  return derive_seed(ctx.config->master_seed,
                     {seed_domain::kSelection, static_cast<std::uint64_t>(ctx.generation), purpose});
}

std::size_t n_task(const SelectionContext& ctx) { return static_cast<std::size_t>(ctx.config->n_task); }

// Tops `selected` up to N_task by sampling the pool with replacement.
void pad_selection(SelectionResult& result, std::size_t pool_size, const SelectionContext& ctx) {
  const std::size_t want = n_task(ctx);
  if (result.selected.size() >= want) return;
  if (pool_size == 0) throw UsageError("task selection: no elites to select from");
  result.warnings.push_back(fmt::format("generation {}: only {} distinct tasks selected, padding to {}",
                                        ctx.generation, result.selected.size(), want));
  Rng rng = make_rng(selection_seed(ctx, seed_domain::kPurposePad));
  std::uniform_int_distribution<std::size_t> pick(0, pool_size - 1);
  while (result.selected.size() < want) result.selected.push_back(pick(rng));
}

void fill_tasks(SelectionResult& result, const ElitePool& pool, Side side, const SelectionContext& ctx) {
  result.tasks.side = side;
  result.tasks.generation = ctx.generation;
  for (std::size_t idx : result.selected) {
    result.tasks.tasks.push_back(pool.entries[idx]->genome);
    result.tasks.labels.push_back(
        fmt::format("g{}:t{}:c{}", ctx.generation, pool.ids[idx].task, pool.ids[idx].cell));
  }
}

// Bootstrap records for the next generation: the old tasks become the
// evolving solutions, the newly selected tasks index the archives.
void fill_bootstrap(SelectionResult& result, const TaskSet& old_tasks,
                    const std::function<std::pair<double, BehaviorDescriptor>(std::size_t, std::size_t)>& duel) {
  for (std::size_t slot = 0; slot < result.selected.size(); ++slot) {
    for (std::size_t j = 0; j < old_tasks.size(); ++j) {
      auto [f, behavior] = duel(slot, j);
      result.bootstrap.push_back({slot, old_tasks.tasks[j], 1.0 - f, std::move(behavior)});
      result.bootstrap_source_fitness.push_back(f);
    }
  }
}

// Behavior and Random: a separate new-vs-old tournament of N_task^2 duels.
void bootstrap_from_new_tournament(SelectionResult& result, const TaskSet& old_tasks,
                                   const SelectionContext& ctx) {
  const TournamentLog log = run_tournament(result.tasks.tasks, old_tasks, ctx, true);
  result.tournament_evaluations += log.rows * log.columns;
  fill_bootstrap(result, old_tasks, [&](std::size_t slot, std::size_t j) {
    return std::pair{log.at(slot, j), log.behaviors[slot * log.columns + j]};
  });
}

// Ranking and Pareto: the elites-vs-old tournament, reused for the bootstrap.
struct EliteTournament {
  ElitePool pool;
  TournamentLog log;
};

EliteTournament elite_tournament(std::span<const GrowingArchive> archives, const TaskSet& old_tasks,
                                 const SelectionContext& ctx) {
  EliteTournament t{gather_elites(archives), {}};
  std::vector<Genome> genomes;
  genomes.reserve(t.pool.size());
  for (const auto* e : t.pool.entries) genomes.push_back(e->genome);
  t.log = run_tournament(genomes, old_tasks, ctx, true);
  return t;
}

void bootstrap_from_elite_tournament(SelectionResult& result, const EliteTournament& t,
                                     const TaskSet& old_tasks) {
  fill_bootstrap(result, old_tasks, [&](std::size_t slot, std::size_t j) {
    const std::size_t row = result.selected[slot];
    return std::pair{t.log.at(row, j), t.log.behaviors[row * t.log.columns + j]};
  });
}

}  // namespace

ElitePool gather_elites(std::span<const GrowingArchive> archives) {
  ElitePool pool;
  for (std::size_t t = 0; t < archives.size(); ++t) {
    const auto elites = archives[t].elites();
    for (std::size_t c = 0; c < elites.size(); ++c) {
      pool.ids.push_back({t, c});
      pool.entries.push_back(&elites[c]);
    }
  }
  return pool;
}

TournamentLog run_tournament(std::span<const Genome> candidates, const TaskSet& old_tasks,
                             const SelectionContext& ctx, bool keep_behaviors) {
  const RunConfig& cfg = *ctx.config;
  TournamentLog log;
  log.rows = candidates.size();
  log.columns = old_tasks.size();
  log.fitness.resize(log.rows * log.columns);
  if (keep_behaviors) log.behaviors.resize(log.rows * log.columns);
  parallel_for(log.rows * log.columns, ctx.workers, [&](std::size_t cell) {
    const std::size_t r = cell / log.columns;
    const std::size_t c = cell % log.columns;
    const Genome& cand = candidates[r];
    const DuelOutcome out = evaluate_pair(
        cfg.env, cfg.env_params, cand, old_tasks.tasks[c],
        derive_seed(cfg.master_seed, {seed_domain::kSelectionDuel,
                                      static_cast<std::uint64_t>(ctx.generation), r, c}));
    log.fitness[cell] = out.fitness.of(cand.side());
    if (keep_behaviors) {
      log.behaviors[cell] = cand.side() == Side::kRed ? out.behavior_blue : out.behavior_red;
    }
  });
  return log;
}

std::vector<std::size_t> best_per_cluster(std::span<const std::size_t> assignment,
                                          std::size_t clusters, std::span<const double> quality) {
  std::vector<std::size_t> best(clusters, assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    std::size_t& b = best[assignment[i]];
    if (b == assignment.size() || quality[i] > quality[b]) b = i;
  }
  std::vector<std::size_t> out;
  for (std::size_t b : best) {
    if (b != assignment.size()) out.push_back(b);
  }
  return out;
}

Picked pick_by_behavior(std::span<const std::vector<double>> behaviors, std::span<const double> fitness,
                        std::size_t n_task, std::uint64_t seed) {
  Picked p;
  if (behaviors.size() < n_task) {
    p.selected.resize(behaviors.size());
    std::iota(p.selected.begin(), p.selected.end(), 0);
    return p;
  }
  const KMeansResult km = kmeans(behaviors, n_task, seed);
  p.cluster_sizes = km.cluster_sizes();
  p.selected = best_per_cluster(km.assignment, n_task, fitness);
  return p;
}

Picked pick_at_random(std::size_t pool, std::size_t n_task, std::uint64_t seed) {
  Picked p;
  std::vector<std::size_t> all(pool);
  std::iota(all.begin(), all.end(), 0);
  Rng rng = make_rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(p.selected), std::min(n_task, pool), rng);
  return p;
}

Picked pick_by_ranking(const TournamentLog& log, std::size_t n_task, std::uint64_t seed) {
  Picked p;
  if (log.rows < n_task) {
    p.selected.resize(log.rows);
    std::iota(p.selected.begin(), p.selected.end(), 0);
    return p;
  }
  std::vector<std::vector<double>> rankings;
  std::vector<double> mean_fitness;
  for (std::size_t r = 0; r < log.rows; ++r) {
    const auto row = log.row(r);
    rankings.push_back(ranking_vector(row));
    mean_fitness.push_back(std::accumulate(row.begin(), row.end(), 0.0) /
                           static_cast<double>(row.size()));
  }
  const KMeansResult km = kmeans(rankings, n_task, seed);
  p.cluster_sizes = km.cluster_sizes();
  p.selected = best_per_cluster(km.assignment, n_task, mean_fitness);
  return p;
}

Picked pick_by_pareto(const TournamentLog& log, std::size_t n_task, std::uint64_t seed) {
  Picked p;
  std::vector<std::vector<double>> objectives;
  for (std::size_t r = 0; r < log.rows; ++r) {
    const auto row = log.row(r);
    objectives.emplace_back(row.begin(), row.end());
  }
  const std::size_t k = std::min(n_task, log.rows);
  if (k > 0) p.selected = nsga3_select(objectives, k, seed);
  return p;
}

SelectionResult select_behavior(std::span<const GrowingArchive> archives, const TaskSet& old_tasks,
                                const SelectionContext& ctx) {
  const ElitePool pool = gather_elites(archives);
  std::vector<std::vector<double>> behaviors;
  std::vector<double> fitness;
  for (const auto* e : pool.entries) {
    behaviors.emplace_back(e->behavior.values().begin(), e->behavior.values().end());
    fitness.push_back(e->fitness);
  }
  Picked picked = pick_by_behavior(behaviors, fitness, n_task(ctx),
                                   selection_seed(ctx, seed_domain::kPurposeCluster));
  SelectionResult result;
  result.selected = std::move(picked.selected);
  result.cluster_sizes = std::move(picked.cluster_sizes);
  pad_selection(result, pool.size(), ctx);
  fill_tasks(result, pool, opposite(old_tasks.side), ctx);
  bootstrap_from_new_tournament(result, old_tasks, ctx);
  return result;
}

SelectionResult select_random(std::span<const GrowingArchive> archives, const TaskSet& old_tasks,
                              const SelectionContext& ctx) {
  const ElitePool pool = gather_elites(archives);
  SelectionResult result;
  result.selected =
      pick_at_random(pool.size(), n_task(ctx), selection_seed(ctx, seed_domain::kPurposeSample)).selected;
  pad_selection(result, pool.size(), ctx);
  fill_tasks(result, pool, opposite(old_tasks.side), ctx);
  bootstrap_from_new_tournament(result, old_tasks, ctx);
  return result;
}

namespace {

SelectionResult select_from_elite_tournament(std::span<const GrowingArchive> archives,
                                             const TaskSet& old_tasks, const SelectionContext& ctx,
                                             Picked (*pick)(const TournamentLog&, std::size_t,
                                                            std::uint64_t),
                                             std::uint64_t purpose) {
  const EliteTournament t = elite_tournament(archives, old_tasks, ctx);
  Picked picked = pick(t.log, n_task(ctx), selection_seed(ctx, purpose));
  SelectionResult result;
  result.tournament_evaluations = t.log.rows * t.log.columns;
  result.selected = std::move(picked.selected);
  result.cluster_sizes = std::move(picked.cluster_sizes);
  pad_selection(result, t.pool.size(), ctx);
  fill_tasks(result, t.pool, opposite(old_tasks.side), ctx);
  bootstrap_from_elite_tournament(result, t, old_tasks);
  return result;
}

}  // namespace

SelectionResult select_ranking(std::span<const GrowingArchive> archives, const TaskSet& old_tasks,
                               const SelectionContext& ctx) {
  return select_from_elite_tournament(archives, old_tasks, ctx, pick_by_ranking,
                                      seed_domain::kPurposeCluster);
}

SelectionResult select_pareto(std::span<const GrowingArchive> archives, const TaskSet& old_tasks,
                              const SelectionContext& ctx) {
  return select_from_elite_tournament(archives, old_tasks, ctx, pick_by_pareto,
                                      seed_domain::kPurposeNiching);
}

SelectionResult select_tasks(Strategy strategy, std::span<const GrowingArchive> archives,
                             const TaskSet& old_tasks, const SelectionContext& ctx) {
  switch (strategy) {
    case Strategy::kBehavior: return select_behavior(archives, old_tasks, ctx);
    case Strategy::kRandom: return select_random(archives, old_tasks, ctx);
    case Strategy::kRanking: return select_ranking(archives, old_tasks, ctx);
    case Strategy::kPareto: return select_pareto(archives, old_tasks, ctx);
  }
  throw UsageError("unknown strategy");
}

}  // namespace gameqd
