#include <cmath>
#include <vector>

#include <doctest.h>

#include "gameqd/env/environment.hpp"
#include "gameqd/errors.hpp"
#include "gameqd/game/game_runner.hpp"
#include "gameqd/io/serialize.hpp"
#include "gameqd/seed.hpp"
#include "support/fixtures.hpp"
#include "support/temp_dir.hpp"

using namespace gameqd;

TEST_SUITE("game_runner") {

TEST_CASE("equalized budget at paper scale") {
  RunConfig c;
  c.n_task = 50;
  c.n_cell = 20;
  c.n_budget = 100000;
  c.n_gen = 10;
  const int tournament = c.n_task * c.n_task * c.n_cell;
  CHECK(equalized_budget(c, Strategy::kRanking) == 100000);
  CHECK(equalized_budget(c, Strategy::kRanking) + tournament == 150000);
  CHECK(c.n_gen * (equalized_budget(c, Strategy::kPareto) + tournament) == 1500000);
  CHECK(equalized_budget(c, Strategy::kRandom) == 147500);
  CHECK(equalized_budget(c, Strategy::kBehavior) + c.n_task * c.n_task == 150000);
  c.n_cell = 1;
  for (Strategy s : kAllStrategies) CHECK(equalized_budget(c, s) == 100000);
  c.n_cell = 20;
  c.equalize_budget = false;
  CHECK(equalized_budget(c, Strategy::kRandom) == 100000);
}

TEST_CASE("a single generation evolves red against random blue tasks") {
  RunConfig c = support::tiny_config();
  c.n_gen = 1;
  const RunManifest m = run_game(c);
  REQUIRE(m.generations.size() == 1);
  CHECK(m.complete);
  CHECK(m.generations[0].side == Side::kRed);
  CHECK(m.generations[0].task_labels[0] == "g0:r0");
  CHECK(m.final_red.side == Side::kRed);
  CHECK(m.final_blue.side == Side::kBlue);
  CHECK(m.final_red.size() == static_cast<std::size_t>(c.n_task));
}

TEST_CASE("sides alternate and consumed tasks play the other side") {
  RunConfig c = support::tiny_config();
  c.n_gen = 3;
  std::vector<Side> evolved;
  GameOptions options;
  options.on_generation = [&](const GenerationTrace& t) {
    evolved.push_back(t.record.side);
    CHECK(t.consumed.side == opposite(t.record.side));
    CHECK(t.selection.tasks.side == t.record.side);
  };
  run_game(c, options);
  CHECK(evolved == std::vector<Side>{Side::kRed, Side::kBlue, Side::kRed});
}

TEST_CASE("bootstrap fitness is the complement of the selecting tournament") {
  RunConfig c = support::tiny_config(Strategy::kRandom);
  c.n_gen = 2;
  std::vector<double> source;
  TaskSet selected;
  TaskSet consumed;
  BootstrapSet installed;
  GameOptions options;
  options.on_generation = [&](const GenerationTrace& t) {
    if (t.record.generation == 1) {
      source = t.selection.bootstrap_source_fitness;
      selected = t.selection.tasks;
      consumed = t.consumed;
    } else {
      installed = t.installed;
    }
  };
  run_game(c, options);
  const std::size_t n = static_cast<std::size_t>(c.n_task);
  REQUIRE(installed.size() == n * n);
  REQUIRE(source.size() == n * n);
  for (std::size_t slot = 0; slot < n; ++slot) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t i = slot * n + j;
      // Recompute the generation-1 new-vs-old duel from the red side.
      const DuelOutcome duel = evaluate_duel(
          c.env, c.env_params, selected.tasks[slot], consumed.tasks[j],
          derive_seed(c.master_seed, {seed_domain::kSelectionDuel, 1, slot, j}));
      CHECK(source[i] == duel.fitness.red);
      CHECK(installed[i].task == slot);
      CHECK(installed[i].genome == consumed.tasks[j]);
      CHECK(installed[i].fitness == 1.0 - duel.fitness.red);
      CHECK(installed[i].fitness == duel.fitness.blue);
    }
  }
}

TEST_CASE("evaluation counts per generation agree across strategies") {
  std::vector<std::size_t> totals;
  for (Strategy s : kAllStrategies) {
    RunConfig c = support::tiny_config(s);
    c.n_gen = 2;
    const RunManifest m = run_game(c);
    for (const auto& g : m.generations) {
      totals.push_back(g.total_evaluations());
      CHECK(g.total_evaluations() ==
            static_cast<std::size_t>(c.n_budget + c.n_task * c.n_task * c.n_cell));
    }
  }
  CHECK(totals.size() == 8);
}

TEST_CASE("identical configs give byte-identical manifests") {
  const RunConfig c = support::tiny_config(Strategy::kPareto);
  support::TempDir a("gameqd-a");
  support::TempDir b("gameqd-b");
  GameOptions oa;
  oa.output_dir = a.path();
  GameOptions ob;
  ob.output_dir = b.path();
  ob.workers = 2;
  run_game(c, oa);
  run_game(c, ob);
  CHECK(support::slurp(a / "manifest.json") == support::slurp(b / "manifest.json"));
  CHECK(support::slurp(a / "gen_2/archives.json") == support::slurp(b / "gen_2/archives.json"));
  CHECK(support::slurp(a / "gen_1/evaluations.jsonl") == support::slurp(b / "gen_1/evaluations.jsonl"));
}

TEST_CASE("resuming after an interruption matches the uninterrupted run") {
  RunConfig c = support::tiny_config(Strategy::kBehavior);
  c.n_gen = 3;
  support::TempDir full("gameqd-full");
  support::TempDir part("gameqd-part");
  GameOptions of;
  of.output_dir = full.path();
  run_game(c, of);

  GameOptions op;
  op.output_dir = part.path();
  op.stop_after = 1;
  const RunManifest first = run_game(c, op);
  CHECK_FALSE(first.complete);
  op.stop_after = 0;
  op.resume = true;
  const RunManifest resumed = run_game(c, op);
  CHECK(resumed.complete);
  CHECK(support::slurp(full / "manifest.json") == support::slurp(part / "manifest.json"));
}

TEST_CASE("resume refuses a checkpoint from another config") {
  RunConfig c = support::tiny_config();
  support::TempDir dir("gameqd-mismatch");
  GameOptions o;
  o.output_dir = dir.path();
  o.stop_after = 1;
  run_game(c, o);
  c.master_seed += 1;
  o.resume = true;
  o.stop_after = 0;
  CHECK_THROWS_AS(run_game(c, o), DataIntegrityError);
}

TEST_CASE("manifests round-trip and detect tampering") {
  const RunManifest m = run_game(support::tiny_config());
  const auto j = encode_manifest(m);
  CHECK(encode_manifest(decode_manifest(j)) == j);
  auto bad = j;
  bad["config"]["n_gen"] = "7";
  CHECK_THROWS_AS(decode_manifest(bad), DataIntegrityError);
}

}
