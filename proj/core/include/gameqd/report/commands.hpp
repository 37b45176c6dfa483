#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gameqd/env/trajectory.hpp"
#include "gameqd/measures/fitness_matrix.hpp"
#include "gameqd/report/measure_table.hpp"
#include "gameqd/report/plan.hpp"

namespace gameqd {

struct CommandOptions {
  int workers = 1;
  bool resume = false;
  bool force = false;
  bool evaluation_log = true;
  std::function<void(const std::string&)> log;
};

struct RunFailure {
  std::string run;
  std::string message;
  int exit_code;
};

struct RunBatchResult {
  std::vector<std::string> completed;
  std::vector<std::string> skipped;  // already complete, left alone by --resume
  std::vector<RunFailure> failures;
};

// Runs every strategy x replication of the plan under `out`. Refuses to touch
// existing runs unless `force` (start over) or `resume` (continue) is set. A
// failing run is reported and the remaining runs still execute.
RunBatchResult cmd_run(const ExperimentPlan& plan, const std::filesystem::path& out,
                       const CommandOptions& options);

enum class TournamentMode { kFinalTasks, kReselectRanking };
std::string_view to_string(TournamentMode mode) noexcept;
TournamentMode tournament_mode_from_string(std::string_view name);

std::filesystem::path matrix_path(const std::filesystem::path& out, TournamentMode mode);

// Round robin between the red and blue solutions of every run, labelled
// "<strategy>/r<rep>/<index>". final_tasks takes each run's final task sets;
// reselect_ranking re-applies Ranking selection to each side's last archives.
FitnessMatrix cmd_tournament(const ExperimentPlan& plan, const std::filesystem::path& out,
                             TournamentMode mode, const CommandOptions& options);

// Measure tables for the given matrices, written as measures_<mode>.csv and
// .txt under `out_dir`. All matrices must come from the same plan.
std::vector<MeasureTable> cmd_measures(std::span<const std::filesystem::path> matrices,
                                       const std::filesystem::path& out_dir);

struct ReplayRequest {
  std::filesystem::path run;  // a run directory with manifest.json
  std::size_t red = 0;        // index into the final red task set
  std::size_t blue = 0;       // index into the final blue task set
  std::filesystem::path out;  // CSV path; a JSON sidecar is written next to it
};

// Replays one duel between final tasks with seed
// derive_seed(run seed, {kReplay, red, blue}).
Trajectory cmd_replay(const ReplayRequest& request);

// `selector` is a replay CSV (one-frame plot), a run label such as
// "ranking/r0", or "all" (archive size curves of every run under `root`).
// Returns the SVG files written.
std::vector<std::filesystem::path> cmd_render(const std::filesystem::path& root,
                                              const std::string& selector,
                                              const std::filesystem::path& out_dir);

// Run labels with a manifest under `root`.
std::vector<std::string> available_runs(const std::filesystem::path& root);

}  // namespace gameqd
