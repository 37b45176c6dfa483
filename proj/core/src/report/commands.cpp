#include "gameqd/report/commands.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "gameqd/env/environment.hpp"
#include "gameqd/errors.hpp"
#include "gameqd/game/game_runner.hpp"
#include "gameqd/io/serialize.hpp"
#include "gameqd/report/svg.hpp"
#include "gameqd/seed.hpp"
#include "gameqd/selection/task_selection.hpp"

namespace gameqd {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void say(const CommandOptions& o, const std::string& line) {
  if (o.log) o.log(line);
}

bool has_manifest(const fs::path& dir) { return fs::exists(dir / "manifest.json"); }

RunManifest load_manifest(const fs::path& dir) {
  return decode_manifest(io::read_json(dir / "manifest.json"));
}

std::vector<LabeledGenome> labelled(const TaskSet& t, const std::string& group) {
  std::vector<LabeledGenome> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back({fmt::format("{}/{}", group, i), t.tasks[i]});
  return out;
}

// Ranking selection re-applied to the last archives evolved by `side`.
TaskSet reselect(const ExperimentPlan& plan, std::size_t strategy_index, int rep, Side side,
                 const fs::path& dir, const RunManifest& manifest, const CommandOptions& options) {
  const int last = static_cast<int>(manifest.generations.size());
  const int gen = manifest.generations.back().side == side ? last : last - 1;
  if (gen < 1) {
    say(options, fmt::format("{}: no archives were evolved for {}; using its initial tasks",
                             dir.string(), to_string(side)));
    return manifest.final_tasks(side);
  }
  const json doc = io::read_json(dir / fmt::format("gen_{}", gen) / "archives.json");
  std::vector<GrowingArchive> archives;
  for (const auto& a : doc.at("archives")) archives.push_back(io::decode_archive(a));
  const TaskSet opponents = io::decode_task_set(doc.at("tasks"), manifest.config.env);

  RunConfig config = manifest.config;
  config.strategy = Strategy::kRanking;
  config.master_seed = derive_seed(plan.base.master_seed,
                                   {seed_domain::kReselect, strategy_index,
                                    static_cast<std::uint64_t>(rep), static_cast<std::uint64_t>(side)});
  return select_ranking(archives, opponents, {&config, gen, options.workers}).tasks;
}

}  // namespace

RunBatchResult cmd_run(const ExperimentPlan& plan, const fs::path& out, const CommandOptions& options) {
  plan.validate();
  const fs::path plan_file = out / "plan.json";
  if (fs::exists(plan_file) && !options.force) {
    const json previous = io::read_json(plan_file);
    if (previous.value("plan_hash", std::string()) != plan.hash()) {
      throw UsageError(fmt::format("{} holds runs of a different plan; use --force to replace them",
                                   out.string()));
    }
  }
  if (!options.force && !options.resume) {
    std::vector<std::string> existing;
    for (Strategy s : plan.strategies) {
      for (int r = 0; r < plan.replications; ++r) {
        if (fs::exists(run_dir(out, s, r))) existing.push_back(run_label(s, r));
      }
    }
    if (!existing.empty()) {
      throw UsageError(fmt::format("{} already has runs ({}); pass --resume or --force", out.string(),
                                   fmt::join(existing, ", ")));
    }
  }
  io::write_text(out / "plan.cfg", plan.canonical_text());
  io::write_json(plan_file, {{"tool_version", io::tool_version()}, {"plan_hash", plan.hash()}});

  RunBatchResult result;
  for (Strategy s : plan.strategies) {
    for (int r = 0; r < plan.replications; ++r) {
      const std::string label = run_label(s, r);
      const fs::path dir = run_dir(out, s, r);
      if (options.force) fs::remove_all(dir);
      if (options.resume && has_manifest(dir) && load_manifest(dir).complete) {
        result.skipped.push_back(label);
        continue;
      }
      GameOptions game;
      game.workers = options.workers;
      game.output_dir = dir;
      game.resume = options.resume;
      game.evaluation_log = options.evaluation_log;
      try {
        const RunManifest m = run_game(plan.run_config(s, r), game);
        for (const auto& g : m.generations) {
          for (const auto& w : g.warnings) say(options, fmt::format("{}: {}", label, w));
        }
        say(options, fmt::format("{}: done ({} generations)", label, m.generations.size()));
        result.completed.push_back(label);
      } catch (const Error& e) {
        say(options, fmt::format("{}: failed: {}", label, e.what()));
        result.failures.push_back({label, e.what(), exit_code_of(e)});
      }
    }
  }
  return result;
}

std::string_view to_string(TournamentMode mode) noexcept {
  return mode == TournamentMode::kFinalTasks ? "final_tasks" : "reselect_ranking";
}

TournamentMode tournament_mode_from_string(std::string_view name) {
  if (name == "final_tasks") return TournamentMode::kFinalTasks;
  if (name == "reselect_ranking") return TournamentMode::kReselectRanking;
  throw UsageError(fmt::format("unknown tournament mode '{}' (final_tasks, reselect_ranking)", name));
}

fs::path matrix_path(const fs::path& out, TournamentMode mode) {
  return out / "tournament" / std::string(to_string(mode)) / "matrix.csv";
}

FitnessMatrix cmd_tournament(const ExperimentPlan& plan, const fs::path& out, TournamentMode mode,
                             const CommandOptions& options) {
  std::vector<std::string> absent;
  for (Strategy s : plan.strategies) {
    for (int r = 0; r < plan.replications; ++r) {
      const fs::path dir = run_dir(out, s, r);
      if (!has_manifest(dir) || !load_manifest(dir).complete) absent.push_back(run_label(s, r));
    }
  }
  if (!absent.empty()) {
    throw DataIntegrityError(fmt::format("missing or incomplete runs: {}", fmt::join(absent, ", ")));
  }

  std::vector<LabeledGenome> red;
  std::vector<LabeledGenome> blue;
  for (std::size_t si = 0; si < plan.strategies.size(); ++si) {
    const Strategy s = plan.strategies[si];
    for (int r = 0; r < plan.replications; ++r) {
      const fs::path dir = run_dir(out, s, r);
      const RunManifest m = load_manifest(dir);
      if (m.config_hash != config_hash(plan.run_config(s, r))) {
        throw DataIntegrityError(fmt::format("{} was produced by a different plan", dir.string()));
      }
      const std::string group = run_label(s, r);
      for (Side side : {Side::kRed, Side::kBlue}) {
        const TaskSet tasks = mode == TournamentMode::kFinalTasks
                                  ? m.final_tasks(side)
                                  : reselect(plan, si, r, side, dir, m, options);
        auto entries = labelled(tasks, group);
        auto& dest = side == Side::kRed ? red : blue;
        dest.insert(dest.end(), entries.begin(), entries.end());
      }
    }
  }
  say(options, fmt::format("tournament {}: {} x {} solutions, {} repetition(s)", to_string(mode),
                           red.size(), blue.size(), plan.tournament_reps));
  FitnessMatrix m = round_robin(red, blue, plan.base.env_params,
                                static_cast<std::size_t>(plan.tournament_reps), plan.base.master_seed,
                                options.workers);
  write_matrix(matrix_path(out, mode), m,
               {std::string(to_string(plan.base.env)), plan.base.master_seed, plan.hash(),
                std::string(to_string(mode))});
  return m;
}

std::vector<MeasureTable> cmd_measures(std::span<const fs::path> matrices, const fs::path& out_dir) {
  if (matrices.empty()) throw UsageError("measures: no matrix given");
  std::vector<std::pair<FitnessMatrix, MatrixProvenance>> inputs;
  for (const auto& path : matrices) {
    MatrixProvenance p;
    FitnessMatrix m = read_matrix(path, &p);
    if (!inputs.empty() && p.plan_hash != inputs.front().second.plan_hash) {
      throw DataIntegrityError(fmt::format("measures: {} comes from plan {}, expected {}", path.string(),
                                           p.plan_hash, inputs.front().second.plan_hash));
    }
    inputs.emplace_back(std::move(m), std::move(p));
  }
  std::vector<MeasureTable> tables;
  for (const auto& [m, p] : inputs) {
    MeasureTable t = compute_measures(m, p);
    io::write_text(out_dir / fmt::format("measures_{}.csv", p.mode), measure_table_csv(t));
    io::write_text(out_dir / fmt::format("measures_{}.txt", p.mode), measure_table_text(t));
    tables.push_back(std::move(t));
  }
  return tables;
}

Trajectory cmd_replay(const ReplayRequest& request) {
  if (!has_manifest(request.run)) {
    throw UsageError(fmt::format("{} has no manifest.json", request.run.string()));
  }
  const RunManifest m = load_manifest(request.run);
  if (m.generations.empty()) throw DataIntegrityError("replay: run has no completed generation");
  if (request.red >= m.final_red.size() || request.blue >= m.final_blue.size()) {
    throw UsageError(fmt::format("replay: indices must be below {} (red) and {} (blue)",
                                 m.final_red.size(), m.final_blue.size()));
  }
  const std::uint64_t seed = derive_seed(m.config.master_seed, {seed_domain::kReplay, request.red, request.blue});
  DuelOutcome duel = evaluate_duel(m.config.env, m.config.env_params, m.final_red.tasks[request.red],
                                   m.final_blue.tasks[request.blue], seed);

  const Trajectory& t = duel.trajectory;
  std::string csv = "step,entity,role,x,y\n";
  for (int s = 0; s < t.steps; ++s) {
    for (std::size_t e = 0; e < t.entity_count(); ++e) {
      csv += fmt::format("{},{},{},{},{}\n", s, e, t.roles[e], t.at(s, e).x, t.at(s, e).y);
    }
  }
  io::write_text(request.out, csv);
  json events = json::array();
  for (const auto& ev : t.events) {
    events.push_back({{"step", ev.step}, {"entity", ev.entity}, {"kind", to_string(ev.kind)}, {"value", ev.value}});
  }
  auto sidecar = request.out;
  sidecar += ".json";
  io::write_json(sidecar, {{"tool_version", io::tool_version()},
                           {"config_hash", m.config_hash},
                           {"env", to_string(m.config.env)},
                           {"red", m.final_red.labels[request.red]},
                           {"blue", m.final_blue.labels[request.blue]},
                           {"seed", seed},
                           {"fitness_red", duel.fitness.red},
                           {"steps", t.steps},
                           {"roles", t.roles},
                           {"events", std::move(events)}});
  return std::move(duel.trajectory);
}

std::vector<std::string> available_runs(const fs::path& root) {
  std::vector<std::string> out;
  const fs::path runs = root / "runs";
  if (!fs::exists(runs)) return out;
  for (const auto& strategy : fs::directory_iterator(runs)) {
    if (!strategy.is_directory()) continue;
    for (const auto& rep : fs::directory_iterator(strategy.path())) {
      if (!has_manifest(rep.path())) continue;
      const std::string name = rep.path().filename().string();
      out.push_back(fmt::format("{}/r{}", strategy.path().filename().string(),
                                name.starts_with("rep") ? name.substr(3) : name));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Trajectory read_replay(const fs::path& csv_path, EnvId& env, std::string& title) {
  auto sidecar_path = csv_path;
  sidecar_path += ".json";
  const json side = io::read_json(sidecar_path);
  Trajectory t;
  try {
    env = env_from_string(side.at("env").get<std::string>());
    t.steps = side.at("steps").get<int>();
    t.roles = side.at("roles").get<std::vector<std::string>>();
    for (const auto& ev : side.at("events")) {
      const auto kind = ev.at("kind").get<std::string>();
      DuelEvent e;
      e.step = ev.at("step").get<int>();
      e.entity = ev.at("entity").get<int>();
      e.kind = kind == "point" ? EventKind::kPoint
               : kind == "rebound" ? EventKind::kRebound
                                   : EventKind::kCapture;
      e.value = ev.at("value").get<double>();
      t.events.push_back(e);
    }
    title = fmt::format("{} vs {} (seed {})", side.at("red").get<std::string>(),
                        side.at("blue").get<std::string>(), side.at("seed").get<std::uint64_t>());
  } catch (const json::exception& e) {
    throw DataIntegrityError(sidecar_path.string() + ": " + e.what());
  }
  std::ifstream in(csv_path);
  if (!in) throw DataIntegrityError("cannot open " + csv_path.string());
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // step,entity,role,x,y
    const auto c3 = line.rfind(',');
    const auto c2 = line.rfind(',', c3 - 1);
    try {
      t.positions.push_back({std::stod(line.substr(c2 + 1, c3 - c2 - 1)), std::stod(line.substr(c3 + 1))});
    } catch (const std::exception&) {
      throw DataIntegrityError("replay: malformed line '" + line + "'");
    }
  }
  if (t.positions.size() != static_cast<std::size_t>(t.steps) * t.roles.size()) {
    throw DataIntegrityError("replay: position count does not match steps x roles");
  }
  return t;
}

std::vector<double> archive_sizes(const RunManifest& m) {
  std::vector<double> out;
  for (const auto& g : m.generations) {
    std::size_t cells = 0;
    for (std::size_t c : g.cells_per_task) cells += c;
    out.push_back(static_cast<double>(cells));
  }
  return out;
}

}  // namespace

std::vector<fs::path> cmd_render(const fs::path& root, const std::string& selector, const fs::path& out_dir) {
  const auto runs = available_runs(root);
  if (selector.empty()) {
    throw UsageError(fmt::format("render: give a replay CSV, a run label, or 'all'; available runs: {}",
                                 runs.empty() ? std::string("none") : fmt::format("{}", fmt::join(runs, ", "))));
  }
  if (selector.ends_with(".csv")) {
    EnvId env{};
    std::string title;
    const Trajectory t = read_replay(selector, env, title);
    const fs::path svg = out_dir / (fs::path(selector).stem().string() + ".svg");
    io::write_text(svg, render_trajectory_svg(t, env_spec(env, EnvParams{}), title));
    return {svg};
  }

  std::vector<std::string> chosen;
  if (selector == "all") {
    chosen = runs;
  } else if (std::find(runs.begin(), runs.end(), selector) != runs.end()) {
    chosen = {selector};
  } else {
    throw UsageError(fmt::format("render: unknown run '{}'; available runs: {}", selector,
                                 runs.empty() ? std::string("none") : fmt::format("{}", fmt::join(runs, ", "))));
  }
  std::vector<CurveSeries> series;
  for (const auto& label : chosen) {
    const auto slash = label.find('/');
    const fs::path dir = root / "runs" / label.substr(0, slash) / ("rep" + label.substr(slash + 2));
    series.push_back({label, archive_sizes(load_manifest(dir))});
  }
  std::string name = selector == "all" ? "archive_sizes" : selector;
  std::replace(name.begin(), name.end(), '/', '_');
  const fs::path svg = out_dir / (name + ".svg");
  io::write_text(svg, render_curves_svg(series, "Filled cells per generation", "cells"));
  return {svg};
}

}  // namespace gameqd
