#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gameqd/config.hpp"
#include "gameqd/mtmb/mtmb.hpp"
#include "gameqd/selection/task_selection.hpp"

namespace gameqd {

struct GenerationRecord {
  int generation = 0;
  Side side = Side::kRed;                  // side evolved in this generation
  std::vector<std::string> task_labels;    // opponents consumed
  std::vector<std::size_t> cells_per_task;
  std::vector<double> best_fitness;        // per task archive
  std::vector<std::string> selected_labels;
  std::vector<std::size_t> cluster_sizes;
  std::vector<std::string> warnings;
  std::size_t bootstrap_records = 0;
  std::size_t loop_evaluations = 0;
  std::size_t selection_evaluations = 0;

  std::size_t total_evaluations() const noexcept { return loop_evaluations + selection_evaluations; }
};

struct RunManifest {
  RunConfig config;
  std::string config_hash;
  std::vector<GenerationRecord> generations;
  bool complete = false;
  TaskSet final_red;
  TaskSet final_blue;

  const TaskSet& final_tasks(Side side) const { return side == Side::kRed ? final_red : final_blue; }
};

// Loop evaluations per generation. With equalization, Behavior and Random get
// the difference between the elite tournament (N_task^2 * N_cell) and their
// own bootstrap tournament (N_task^2) added to N_budget.
int equalized_budget(const RunConfig& config, Strategy strategy);

// Everything produced by one generation, for callers that want more than the
// manifest keeps.
struct GenerationTrace {
  const GenerationRecord& record;
  const TaskSet& consumed;
  const BootstrapSet& installed;
  const MtmbResult& loop;
  const SelectionResult& selection;
};

struct GameOptions {
  int workers = 1;
  // When set, the run persists manifest.json, checkpoint.json and one
  // gen_<g>/ directory per generation here.
  std::filesystem::path output_dir;
  bool resume = false;
  bool evaluation_log = true;
  int stop_after = 0;  // stop after this many completed generations (0: run all)
  std::function<void(const GenerationTrace&)> on_generation;
};

// Initial opponents: N_task uniform random Blue genomes.
TaskSet initial_tasks(const RunConfig& config);

RunManifest run_game(const RunConfig& config, const GameOptions& options = {});

nlohmann::json encode_manifest(const RunManifest& m);
RunManifest decode_manifest(const nlohmann::json& j);

}  // namespace gameqd
