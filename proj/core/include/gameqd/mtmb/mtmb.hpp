#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gameqd/archive/growing_archive.hpp"
#include "gameqd/config.hpp"
#include "gameqd/types.hpp"

namespace gameqd {

// Fixed opponents for one generation. `labels` identify where each task came
// from ("g0:r3" for initial random tasks, "g2:t4:c1" for the elite of cell 1
// of task archive 4 in generation 2).
struct TaskSet {
  Side side = Side::kBlue;
  int generation = 0;
  std::vector<Genome> tasks;
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return tasks.size(); }
};

// Evaluation carried into a generation before its loop starts. `fitness` is
// from the perspective of `genome`, the evolving side.
struct BootstrapRecord {
  std::size_t task;
  Genome genome;
  double fitness;
  BehaviorDescriptor behavior;
};

using BootstrapSet = std::vector<BootstrapRecord>;

// Perturbs exactly round(rate * size) distinct parameters with N(0, sigma)
// noise; all other parameters are copied bit-for-bit.
Genome mutate(const Genome& parent, std::uint64_t seed, double rate, double sigma);

struct CandidateProvenance {
  enum class Kind { kRandom, kMutation };
  Kind kind = Kind::kRandom;
  std::size_t parent_task = 0;
  std::size_t parent_cell = 0;
};

struct EvaluationRecord {
  int generation;
  int iteration;
  std::size_t task;
  CandidateProvenance provenance;
  double fitness;
  BehaviorDescriptor behavior;
  UpdateKind update;
};

struct MtmbOptions {
  int generation = 1;
  int budget = 0;   // loop evaluations for this generation
  int workers = 1;
  std::function<void(const EvaluationRecord&)> on_evaluation;
};

struct MtmbResult {
  std::vector<GrowingArchive> archives;
  std::size_t evaluations = 0;
  std::size_t random_candidates = 0;
  std::size_t mutated_candidates = 0;
};

// One MTMB-ME run of `side` against `tasks`: bootstrap records are applied in
// order, then `options.budget` candidates are generated in batches of
// config.batch_size from archive snapshots, evaluated, and applied in order.
MtmbResult run_mtmb(const TaskSet& tasks, Side side, const BootstrapSet& bootstrap,
                    const RunConfig& config, const MtmbOptions& options);

}  // namespace gameqd
