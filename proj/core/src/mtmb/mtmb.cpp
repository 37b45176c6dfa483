#include "gameqd/mtmb/mtmb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

#include "gameqd/env/environment.hpp"
#include "gameqd/errors.hpp"
#include "gameqd/mlp.hpp"
#include "gameqd/parallel.hpp"
#include "gameqd/seed.hpp"

namespace gameqd {

Genome mutate(const Genome& parent, std::uint64_t seed, double rate, double sigma) {
  const auto params = parent.params();
  std::vector<double> child(params.begin(), params.end());
  const auto k = static_cast<std::size_t>(std::lround(rate * static_cast<double>(child.size())));
  if (k == 0) return Genome(parent.side(), parent.env(), std::move(child));

  Rng rng = make_rng(seed);
  std::vector<std::size_t> all(child.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  std::sample(all.begin(), all.end(), std::back_inserter(chosen), k, rng);
  std::normal_distribution<double> noise(0.0, sigma);
  for (std::size_t i : chosen) child[i] += noise(rng);
  return Genome(parent.side(), parent.env(), std::move(child));
}

namespace {

struct EliteRef {
  std::size_t task;
  std::size_t cell;
  const Genome* genome;
};

struct Candidate {
  std::size_t task = 0;
  CandidateProvenance provenance;
  std::optional<Genome> genome;
  double fitness = 0.0;
  BehaviorDescriptor behavior;
};

}  // namespace

MtmbResult run_mtmb(const TaskSet& tasks, Side side, const BootstrapSet& bootstrap,
                    const RunConfig& config, const MtmbOptions& options) {
  if (tasks.size() == 0) throw UsageError("run_mtmb: empty task set");
  if (tasks.side != opposite(side)) throw UsageError("run_mtmb: tasks must play the opposite side");

  MtmbResult result;
  result.archives.reserve(tasks.size());
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    result.archives.emplace_back(static_cast<std::size_t>(config.n_cell),
                                 static_cast<std::size_t>(config.backup_cap));
  }
  for (const auto& rec : bootstrap) {
    if (rec.task >= tasks.size()) throw UsageError("run_mtmb: bootstrap task index out of range");
    result.archives[rec.task].update(rec.genome, rec.fitness, rec.behavior);
  }

  const std::uint64_t seed = config.master_seed;
  const auto gen = static_cast<std::uint64_t>(options.generation);
  const auto n_init = static_cast<std::size_t>(config.effective_n_init());
  const int batch = std::max(config.batch_size, 1);

  for (int start = 0; start < options.budget; start += batch) {
    const int count = std::min(batch, options.budget - start);

    // Snapshot of the union of all archives, task-major then cell order.
    std::vector<EliteRef> pool;
    for (std::size_t t = 0; t < result.archives.size(); ++t) {
      const auto elites = result.archives[t].elites();
      for (std::size_t c = 0; c < elites.size(); ++c) pool.push_back({t, c, &elites[c].genome});
    }

    std::vector<Candidate> candidates(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
      const auto iter = static_cast<std::uint64_t>(start + j);
      Rng rng = make_rng(derive_seed(seed, {seed_domain::kCandidate, gen, iter}));
      Candidate& cand = candidates[static_cast<std::size_t>(j)];
      cand.task = std::uniform_int_distribution<std::size_t>(0, tasks.size() - 1)(rng);
      if (pool.size() < n_init || pool.empty()) {
        cand.genome = random_genome(config.env, side, rng);
      } else {
        const auto& parent = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        cand.provenance = {CandidateProvenance::Kind::kMutation, parent.task, parent.cell};
        cand.genome = mutate(*parent.genome, derive_seed(seed, {seed_domain::kMutation, gen, iter}),
                             config.mutation_rate, config.mutation_sigma);
      }
    }

    parallel_for(candidates.size(), options.workers, [&](std::size_t j) {
      Candidate& cand = candidates[j];
      const auto iter = static_cast<std::uint64_t>(start) + j;
      const DuelOutcome out =
          evaluate_pair(config.env, config.env_params, *cand.genome, tasks.tasks[cand.task],
                        derive_seed(seed, {seed_domain::kLoopDuel, gen, iter}));
      cand.fitness = out.fitness.of(side);
      cand.behavior = side == Side::kRed ? out.behavior_red : out.behavior_blue;
    });

    for (std::size_t j = 0; j < candidates.size(); ++j) {
      Candidate& cand = candidates[j];
      const UpdateKind kind = result.archives[cand.task].update(*cand.genome, cand.fitness, cand.behavior);
      ++result.evaluations;
      if (cand.provenance.kind == CandidateProvenance::Kind::kRandom) {
        ++result.random_candidates;
      } else {
        ++result.mutated_candidates;
      }
      if (options.on_evaluation) {
        options.on_evaluation({options.generation, start + static_cast<int>(j), cand.task,
                               cand.provenance, cand.fitness, cand.behavior, kind});
      }
    }
  }
  return result;
}

}  // namespace gameqd
