#include "gameqd/game/game_runner.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "gameqd/errors.hpp"
#include "gameqd/io/serialize.hpp"
#include "gameqd/mlp.hpp"
#include "gameqd/seed.hpp"

namespace gameqd {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kManifest = "manifest.json";
constexpr const char* kCheckpoint = "checkpoint.json";

fs::path generation_dir(const fs::path& root, int gen) { return root / fmt::format("gen_{}", gen); }

json encode_record(const GenerationRecord& r) {
  return {{"generation", r.generation},
          {"side", to_string(r.side)},
          {"tasks", r.task_labels},
          {"archives", {{"cells_per_task", r.cells_per_task}, {"best_fitness", r.best_fitness}}},
          {"selected", r.selected_labels},
          {"cluster_sizes", r.cluster_sizes},
          {"warnings", r.warnings},
          {"evaluations",
           {{"bootstrap_records", r.bootstrap_records},
            {"loop", r.loop_evaluations},
            {"selection", r.selection_evaluations},
            {"total", r.total_evaluations()}}}};
}

GenerationRecord decode_record(const json& j) {
  try {
    GenerationRecord r;
    r.generation = j.at("generation").get<int>();
    r.side = side_from_string(j.at("side").get<std::string>());
    r.task_labels = j.at("tasks").get<std::vector<std::string>>();
    r.cells_per_task = j.at("archives").at("cells_per_task").get<std::vector<std::size_t>>();
    r.best_fitness = j.at("archives").at("best_fitness").get<std::vector<double>>();
    r.selected_labels = j.at("selected").get<std::vector<std::string>>();
    r.cluster_sizes = j.at("cluster_sizes").get<std::vector<std::size_t>>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    const auto& e = j.at("evaluations");
    r.bootstrap_records = e.at("bootstrap_records").get<std::size_t>();
    r.loop_evaluations = e.at("loop").get<std::size_t>();
    r.selection_evaluations = e.at("selection").get<std::size_t>();
    return r;
  } catch (const json::exception& e) {
    throw DataIntegrityError(std::string("generation record: ") + e.what());
  }
}

json encode_selection_report(const RunConfig& config, const SelectionResult& s,
                             const GenerationRecord& r) {
  return {{"tool_version", io::tool_version()},
          {"config_hash", config_hash(config)},
          {"generation", r.generation},
          {"strategy", to_string(config.strategy)},
          {"selected", r.selected_labels},
          {"cluster_sizes", s.cluster_sizes},
          {"tournament_evaluations", s.tournament_evaluations},
          {"warnings", s.warnings}};
}

GenerationRecord summarize(int gen, Side side, const TaskSet& consumed, const MtmbResult& loop,
                           const SelectionResult& sel, std::size_t bootstrap_records) {
  GenerationRecord r;
  r.generation = gen;
  r.side = side;
  r.task_labels = consumed.labels;
  for (const auto& a : loop.archives) {
    r.cells_per_task.push_back(a.size());
    double best = 0.0;
    bool any = false;
    for (const auto& e : a.elites()) {
      best = any ? std::max(best, e.fitness) : e.fitness;
      any = true;
    }
    r.best_fitness.push_back(best);
  }
  r.selected_labels = sel.tasks.labels;
  r.cluster_sizes = sel.cluster_sizes;
  r.warnings = sel.warnings;
  r.bootstrap_records = bootstrap_records;
  r.loop_evaluations = loop.evaluations;
  r.selection_evaluations = sel.tournament_evaluations;
  return r;
}

struct Checkpoint {
  int completed = 0;
  TaskSet tasks;
  BootstrapSet bootstrap;
};

json encode_checkpoint(const RunConfig& config, const Checkpoint& c) {
  json boot = json::array();
  for (const auto& r : c.bootstrap) boot.push_back(io::encode(r));
  return {{"tool_version", io::tool_version()},
          {"config_hash", config_hash(config)},
          {"completed", c.completed},
          {"tasks", io::encode(c.tasks)},
          {"bootstrap", std::move(boot)}};
}

Checkpoint decode_checkpoint(const RunConfig& config, const json& j) {
  if (j.value("config_hash", std::string()) != config_hash(config)) {
    throw DataIntegrityError("checkpoint was written for a different configuration");
  }
  Checkpoint c;
  c.completed = j.at("completed").get<int>();
  c.tasks = io::decode_task_set(j.at("tasks"), config.env);
  for (const auto& r : j.at("bootstrap")) c.bootstrap.push_back(io::decode_bootstrap(r));
  return c;
}

}  // namespace

int equalized_budget(const RunConfig& config, Strategy strategy) {
  if (!config.equalize_budget) return config.n_budget;
  switch (strategy) {
    case Strategy::kRanking:
    case Strategy::kPareto:
      return config.n_budget;
    case Strategy::kBehavior:
    case Strategy::kRandom:
      return config.n_budget + config.n_task * config.n_task * config.n_cell -
             config.n_task * config.n_task;
  }
  return config.n_budget;
}

TaskSet initial_tasks(const RunConfig& config) {
  TaskSet t;
  t.side = Side::kBlue;
  t.generation = 0;
  for (int i = 0; i < config.n_task; ++i) {
    Rng rng = make_rng(derive_seed(config.master_seed,
                                   {seed_domain::kInitialTasks, static_cast<std::uint64_t>(i)}));
    t.tasks.push_back(random_genome(config.env, Side::kBlue, rng));
    t.labels.push_back(fmt::format("g0:r{}", i));
  }
  return t;
}

json encode_manifest(const RunManifest& m) {
  json gens = json::array();
  for (const auto& r : m.generations) gens.push_back(encode_record(r));
  json out{{"tool_version", io::tool_version()},
           {"config_hash", m.config_hash},
           {"master_seed", m.config.master_seed},
           {"config", io::encode(m.config)},
           {"complete", m.complete},
           {"generations", std::move(gens)}};
  if (!m.generations.empty()) {
    out["final_tasks"] = {{"red", io::encode(m.final_red)}, {"blue", io::encode(m.final_blue)}};
  }
  return out;
}

RunManifest decode_manifest(const json& j) {
  RunManifest m;
  try {
    m.config = io::decode_config(j.at("config"));
    m.config_hash = j.at("config_hash").get<std::string>();
    m.complete = j.at("complete").get<bool>();
    for (const auto& r : j.at("generations")) m.generations.push_back(decode_record(r));
    if (j.contains("final_tasks")) {
      m.final_red = io::decode_task_set(j.at("final_tasks").at("red"), m.config.env);
      m.final_blue = io::decode_task_set(j.at("final_tasks").at("blue"), m.config.env);
    }
  } catch (const json::exception& e) {
    throw DataIntegrityError(std::string("manifest: ") + e.what());
  }
  if (m.config_hash != config_hash(m.config)) {
    throw DataIntegrityError("manifest: config hash does not match its config");
  }
  return m;
}

RunManifest run_game(const RunConfig& config, const GameOptions& options) {
  config.validate();
  const bool persist = !options.output_dir.empty();

  RunManifest manifest;
  manifest.config = config;
  manifest.config_hash = config_hash(config);

  Checkpoint state{0, initial_tasks(config), {}};
  if (persist && options.resume && fs::exists(options.output_dir / kCheckpoint)) {
    state = decode_checkpoint(config, io::read_json(options.output_dir / kCheckpoint));
    RunManifest previous = decode_manifest(io::read_json(options.output_dir / kManifest));
    if (previous.config_hash != manifest.config_hash ||
        previous.generations.size() != static_cast<std::size_t>(state.completed)) {
      throw DataIntegrityError("manifest and checkpoint disagree; rerun with --force");
    }
    manifest = std::move(previous);
  }

  for (int gen = state.completed + 1; gen <= config.n_gen; ++gen) {
    if (options.stop_after > 0 && gen > options.stop_after) break;
    const Side side = gen % 2 == 1 ? Side::kRed : Side::kBlue;

    std::ofstream eval_log;
    MtmbOptions loop_options;
    loop_options.generation = gen;
    loop_options.budget = equalized_budget(config, config.strategy);
    loop_options.workers = options.workers;
    if (persist && options.evaluation_log) {
      fs::create_directories(generation_dir(options.output_dir, gen));
      eval_log.open(generation_dir(options.output_dir, gen) / "evaluations.jsonl", std::ios::trunc);
      loop_options.on_evaluation = [&eval_log](const EvaluationRecord& r) {
        eval_log << io::encode(r).dump() << '\n';
      };
    }

    const MtmbResult loop = run_mtmb(state.tasks, side, state.bootstrap, config, loop_options);
    const SelectionResult selection =
        select_tasks(config.strategy, loop.archives, state.tasks, {&config, gen, options.workers});
    const GenerationRecord record =
        summarize(gen, side, state.tasks, loop, selection, state.bootstrap.size());
    if (options.on_generation) {
      options.on_generation({record, state.tasks, state.bootstrap, loop, selection});
    }

    if (persist) {
      const fs::path dir = generation_dir(options.output_dir, gen);
      json archives = json::array();
      for (const auto& a : loop.archives) archives.push_back(io::encode(a, gen == config.n_gen));
      io::write_json(dir / "archives.json", {{"tool_version", io::tool_version()},
                                             {"config_hash", manifest.config_hash},
                                             {"generation", gen},
                                             {"side", to_string(side)},
                                             {"tasks", io::encode(state.tasks)},
                                             {"archives", std::move(archives)}});
      io::write_json(dir / "selection.json", encode_selection_report(config, selection, record));
    }

    manifest.generations.push_back(record);
    TaskSet consumed = std::move(state.tasks);
    state.tasks = selection.tasks;
    state.bootstrap = selection.bootstrap;
    state.completed = gen;
    (side == Side::kRed ? manifest.final_red : manifest.final_blue) = state.tasks;
    (side == Side::kRed ? manifest.final_blue : manifest.final_red) = std::move(consumed);

    if (persist) {
      io::write_json(options.output_dir / kCheckpoint, encode_checkpoint(config, state));
      io::write_json(options.output_dir / kManifest, encode_manifest(manifest));
    }
  }

  manifest.complete = manifest.generations.size() == static_cast<std::size_t>(config.n_gen);
  if (persist) io::write_json(options.output_dir / kManifest, encode_manifest(manifest));
  return manifest;
}

}  // namespace gameqd
