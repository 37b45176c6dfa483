// gameqd: run GAME experiments, play the inter-variant tournament, and report
// measures. See README.md for the workflow.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "gameqd/errors.hpp"
#include "gameqd/io/serialize.hpp"
#include "gameqd/report/commands.hpp"
#include "gameqd/report/plan.hpp"

namespace fs = std::filesystem;

namespace {

struct GlobalFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  int workers = 1;
  bool resume = false;
  bool force = false;
  std::map<std::string, std::string> overrides;
};

gameqd::ExperimentPlan load_plan(const GlobalFlags& flags) {
  if (flags.config.empty()) throw gameqd::UsageError("--config is required");
  gameqd::KeyValues kv = gameqd::read_key_value_file(flags.config);
  for (const auto& [key, value] : flags.overrides) kv[key] = value;
  if (flags.seed) kv["master_seed"] = std::to_string(*flags.seed);
  return gameqd::plan_from(kv);
}

gameqd::CommandOptions command_options(const GlobalFlags& flags) {
  gameqd::CommandOptions o;
  o.workers = flags.workers;
  o.resume = flags.resume;
  o.force = flags.force;
  o.log = [](const std::string& line) { std::cerr << line << '\n'; };
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial quality-diversity with GAME: runs, tournaments, measures"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", gameqd::io::tool_version());

  GlobalFlags flags;
  app.add_option("--config", flags.config, "Experiment plan (key = value file)");
  app.add_option("--seed", flags.seed, "Override master_seed");
  app.add_option("--out", flags.out, "Output root")->capture_default_str();
  app.add_option("--workers", flags.workers, "Evaluation threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--resume", flags.resume, "Continue interrupted runs");
  app.add_flag("--force", flags.force, "Replace existing runs");
  auto* overrides = app.add_option_group("Config overrides", "Any plan key, e.g. --n_gen 2");
  for (const auto& key : gameqd::run_config_schema()) {
    overrides->add_option(fmt::format("--{}", key.key), flags.overrides[std::string(key.key)],
                          std::string(key.help));
  }
  for (const char* key : {"strategies", "replications", "tournament_reps"}) {
    overrides->add_option(fmt::format("--{}", key), flags.overrides[key]);
  }

  auto* run = app.add_subcommand("run", "Run every strategy and replication of the plan");
  bool no_eval_log = false;
  run->add_flag("--no-eval-log", no_eval_log, "Skip per-evaluation JSONL logs");

  auto* tournament = app.add_subcommand("tournament", "Round robin between all runs' final tasks");
  std::string mode = "final_tasks";
  tournament->add_option("--mode", mode, "final_tasks or reselect_ranking")
      ->check(CLI::IsMember({"final_tasks", "reselect_ranking"}))
      ->capture_default_str();

  auto* measures = app.add_subcommand("measures", "Measure tables from tournament matrices");
  std::vector<std::string> matrices;
  measures->add_option("--matrix", matrices, "Matrix CSV (default: every matrix under <out>/tournament)");

  auto* render = app.add_subcommand("render", "SVG plots of a replay or of archive sizes");
  std::string selector;
  render->add_option("selector", selector, "Replay CSV, run label (ranking/r0), or 'all'");

  auto* replay = app.add_subcommand("replay", "Replay one duel between final tasks of a run");
  gameqd::ReplayRequest request;
  std::string run_label;
  replay->add_option("--run", run_label, "Run label (ranking/r0) or run directory")->required();
  replay->add_option("--red", request.red, "Index into the final red tasks")->capture_default_str();
  replay->add_option("--blue", request.blue, "Index into the final blue tasks")->capture_default_str();
  std::string replay_out;
  replay->add_option("--file", replay_out, "Output CSV (default: <out>/replays/<run>_<red>_<blue>.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gameqd::kExitUsage;
  }
  // Empty override strings were never given.
  std::erase_if(flags.overrides, [](const auto& kv) { return kv.second.empty(); });

  const fs::path out = flags.out;
  try {
    if (*run) {
      const auto plan = load_plan(flags);
      auto options = command_options(flags);
      options.evaluation_log = !no_eval_log;
      const auto result = gameqd::cmd_run(plan, out, options);
      fmt::print("{} run(s) completed, {} skipped, {} failed\n", result.completed.size(),
                 result.skipped.size(), result.failures.size());
      if (!result.failures.empty()) {
        for (const auto& f : result.failures) fmt::print(stderr, "{}: {}\n", f.run, f.message);
        return result.failures.front().exit_code;
      }
    } else if (*tournament) {
      const auto plan = load_plan(flags);
      const auto m = gameqd::cmd_tournament(plan, out, gameqd::tournament_mode_from_string(mode),
                                            command_options(flags));
      fmt::print("{}x{} matrix written to {}\n", m.rows(), m.columns(),
                 gameqd::matrix_path(out, gameqd::tournament_mode_from_string(mode)).string());
    } else if (*measures) {
      std::vector<fs::path> paths(matrices.begin(), matrices.end());
      if (paths.empty()) {
        for (const char* m : {"final_tasks", "reselect_ranking"}) {
          const auto p = gameqd::matrix_path(out, gameqd::tournament_mode_from_string(m));
          if (fs::exists(p)) paths.push_back(p);
        }
      }
      if (paths.empty()) throw gameqd::UsageError("no tournament matrix found; run 'tournament' first");
      for (const auto& t : gameqd::cmd_measures(paths, out / "measures")) {
        fmt::print("{}\n", gameqd::measure_table_text(t));
      }
    } else if (*render) {
      for (const auto& p : gameqd::cmd_render(out, selector, out / "plots")) fmt::print("{}\n", p.string());
    } else if (*replay) {
      fs::path dir = run_label;
      std::string stem = run_label;
      if (const auto slash = run_label.find("/r"); !fs::exists(dir) && slash != std::string::npos) {
        dir = out / "runs" / run_label.substr(0, slash) / ("rep" + run_label.substr(slash + 2));
      }
      std::replace(stem.begin(), stem.end(), '/', '_');
      request.run = dir;
      request.out = replay_out.empty()
                        ? out / "replays" / fmt::format("{}_{}_{}.csv", stem, request.red, request.blue)
                        : fs::path(replay_out);
      const auto t = gameqd::cmd_replay(request);
      fmt::print("{} steps written to {}\n", t.steps, request.out.string());
    }
  } catch (const gameqd::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return gameqd::exit_code_of(e);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return gameqd::kExitEvaluation;
  }
  return gameqd::kExitOk;
}
