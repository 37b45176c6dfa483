#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "gameqd/errors.hpp"
#include "gameqd/io/serialize.hpp"
#include "gameqd/mlp.hpp"
#include "gameqd/report/commands.hpp"
#include "gameqd/report/measure_table.hpp"
#include "gameqd/report/plan.hpp"
#include "gameqd/report/svg.hpp"
#include "support/archive_equivalence.hpp"
#include "support/fixtures.hpp"
#include "support/temp_dir.hpp"

using namespace gameqd;
namespace fs = std::filesystem;

namespace {

ExperimentPlan tiny_plan(int replications = 2) {
  ExperimentPlan plan;
  plan.base = support::tiny_config();
  plan.base.n_task = 4;
  plan.base.n_cell = 2;
  plan.base.n_init = 4;
  plan.strategies = {Strategy::kRanking, Strategy::kRandom};
  plan.replications = replications;
  plan.validate();
  return plan;
}

CommandOptions quiet() {
  CommandOptions o;
  o.log = [](const std::string&) {};
  return o;
}

}  // namespace

TEST_SUITE("cli_reporting") {

TEST_CASE("plan files parse and hash canonically") {
  std::istringstream in(
      "env = cat_mouse\nmaster_seed = 5\nstrategies = ranking, random\nreplications = 3\n"
      "n_task = 4\nn_cell = 2\nn_budget = 40\nn_init = 4\n");
  const ExperimentPlan p = plan_from(parse_key_values(in));
  CHECK(p.strategies == std::vector<Strategy>{Strategy::kRanking, Strategy::kRandom});
  CHECK(p.replications == 3);
  std::istringstream again(p.canonical_text());
  CHECK(plan_from(parse_key_values(again)).hash() == p.hash());
  // Replications share seeds across strategies.
  CHECK(p.run_config(Strategy::kRanking, 1).master_seed == p.run_config(Strategy::kRandom, 1).master_seed);
  CHECK(p.run_config(Strategy::kRanking, 0).master_seed != p.run_config(Strategy::kRanking, 1).master_seed);
  std::istringstream typo("master_seed = 5\nreplicatons = 3\n");
  CHECK_THROWS_AS(plan_from(parse_key_values(typo)), ConfigError);
}

TEST_CASE("archives round-trip through JSON bit for bit") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GrowingArchive a(4, 5);
  for (int i = 0; i < 60; ++i) {
    std::vector<double> b{u(rng), u(rng), 0.0, u(rng) / 3.0};
    a.update(support::tagged_genome(i), u(rng), BehaviorDescriptor(b));
  }
  const auto j = io::encode(a);
  const GrowingArchive back = io::decode_archive(nlohmann::json::parse(j.dump()));
  CHECK(io::encode(back) == j);
  for (std::size_t c = 0; c < a.size(); ++c) {
    CHECK(back.elites()[c].fitness == a.elites()[c].fitness);
    CHECK(back.centroids()[c] == a.centroids()[c]);
    CHECK(back.elites()[c].genome == a.elites()[c].genome);
  }
  auto broken = j;
  broken["elites"].erase(0);
  CHECK_THROWS_AS(io::decode_archive(broken), DataIntegrityError);
}

TEST_CASE("run, tournament, and measures on a tiny plan") {
  support::TempDir out("gameqd-plan");
  const ExperimentPlan plan = tiny_plan();
  const RunBatchResult batch = cmd_run(plan, out.path(), quiet());
  CHECK(batch.failures.empty());
  CHECK(batch.completed.size() == 4);
  CHECK(fs::exists(run_dir(out.path(), Strategy::kRanking, 1) / "manifest.json"));
  CHECK(available_runs(out.path()).size() == 4);

  SUBCASE("existing runs are left alone without --resume or --force") {
    CHECK_THROWS_AS(cmd_run(plan, out.path(), quiet()), UsageError);
    CommandOptions resume = quiet();
    resume.resume = true;
    const RunBatchResult again = cmd_run(plan, out.path(), resume);
    CHECK(again.skipped.size() == 4);
    CHECK(again.completed.empty());
  }

  SUBCASE("tournaments are square per side pairing and repeatable") {
    const FitnessMatrix m = cmd_tournament(plan, out.path(), TournamentMode::kFinalTasks, quiet());
    CHECK(m.rows() == 16);
    CHECK(m.columns() == 16);
    CHECK(m.row_labels()[0] == "ranking/r0/0");
    const std::string first = support::slurp(matrix_path(out.path(), TournamentMode::kFinalTasks));
    CHECK(cmd_tournament(plan, out.path(), TournamentMode::kFinalTasks, quiet()) == m);
    CHECK(support::slurp(matrix_path(out.path(), TournamentMode::kFinalTasks)) == first);
    const FitnessMatrix re = cmd_tournament(plan, out.path(), TournamentMode::kReselectRanking, quiet());
    CHECK(re.row_labels() == m.row_labels());
    CHECK(re.column_labels() == m.column_labels());

    const std::vector<fs::path> inputs{matrix_path(out.path(), TournamentMode::kFinalTasks)};
    const auto tables = cmd_measures(inputs, out / "measures");
    REQUIRE(tables.size() == 1);
    const MeasureTable& t = tables[0];
    CHECK(t.sides == std::vector<std::string>{"cat", "mouse"});
    CHECK(t.rows.size() == 2 * 2 * 6);
    for (const char* name : kMeasureNames) CHECK(t.find("mouse", "random", name).values.size() == 2);
    CHECK(fs::exists(out / "measures" / "measures_final_tasks.csv"));
    CHECK(fs::exists(out / "measures" / "measures_final_tasks.txt"));
  }

  SUBCASE("replay and render are byte-deterministic") {
    ReplayRequest req{run_dir(out.path(), Strategy::kRanking, 0), 1, 2, out / "replay" / "duel.csv"};
    const Trajectory t = cmd_replay(req);
    CHECK(t.steps == plan.base.env_params.cat_mouse.steps);
    const auto svg = cmd_render(out.path(), req.out.string(), out / "plots");
    REQUIRE(svg.size() == 1);
    const std::string first = support::slurp(svg[0]);
    cmd_render(out.path(), req.out.string(), out / "plots");
    CHECK(support::slurp(svg[0]) == first);
    CHECK(first.find("<svg") != std::string::npos);
    CHECK(cmd_render(out.path(), "all", out / "plots").size() == 1);
    CHECK(cmd_render(out.path(), "ranking/r1", out / "plots").size() == 1);
    CHECK_THROWS_AS(cmd_render(out.path(), "", out / "plots"), UsageError);
    CHECK_THROWS_AS(cmd_render(out.path(), "nope/r9", out / "plots"), UsageError);
  }
}

TEST_CASE("missing runs are reported by the tournament") {
  support::TempDir out("gameqd-missing");
  CHECK_THROWS_AS(cmd_tournament(tiny_plan(), out.path(), TournamentMode::kFinalTasks, quiet()),
                  DataIntegrityError);
}

TEST_CASE("single replication tables collapse quartiles onto the median") {
  const auto m = FitnessMatrix({"ranking/r0/0", "ranking/r0/1"}, {"ranking/r0/0", "ranking/r0/1"}, 1,
                               {0.9, 0.6, 0.7, 0.8});
  const MeasureTable t = compute_measures(m, {"cat_mouse", 1, "0123456789abcdef", "final_tasks"});
  for (const auto& row : t.rows) {
    CHECK(row.summary.q1 == row.summary.median);
    CHECK(row.summary.q3 == row.summary.median);
  }
  // The mouse side never beats anything, so AQD for the cat is unbounded.
  const MeasureRow& aqd = t.find("cat", "ranking", "AQD-Score");
  CHECK(std::isinf(aqd.summary.median));
  CHECK(measure_table_text(t).find("∞") != std::string::npos);
  CHECK(measure_table_csv(t).find("cat,ranking,AQD-Score,null,null,null") != std::string::npos);
}

TEST_CASE("measures refuse matrices from different plans") {
  support::TempDir dir("gameqd-mixed");
  const auto m = FitnessMatrix({"ranking/r0/0"}, {"ranking/r0/0"}, 1, {0.5});
  write_matrix(dir / "a.csv", m, {"pong", 1, "1111111111111111", "final_tasks"});
  write_matrix(dir / "b.csv", m, {"pong", 1, "2222222222222222", "final_tasks"});
  const std::vector<fs::path> both{dir / "a.csv", dir / "b.csv"};
  CHECK_THROWS_AS(cmd_measures(both, dir / "out"), DataIntegrityError);
}

TEST_CASE("column maxima of 0.5 report expertise 0.50") {
  // Pong-style ties: every column's best answer is a 0-0 draw.
  const auto m = FitnessMatrix({"ranking/r0/0", "ranking/r0/1"}, {"ranking/r0/0", "ranking/r0/1"}, 1,
                               {0.5, 0.2, 0.3, 0.5});
  const MeasureTable t = compute_measures(m, {"pong", 1, "0123456789abcdef", "final_tasks"});
  CHECK(t.find("left", "ranking", "Expertise").summary.median == 0.5);
  CHECK(measure_table_text(t).find("0.50 [0.50, 0.50]") != std::string::npos);
}

TEST_CASE("curve plots are deterministic") {
  const std::vector<CurveSeries> s{{"a", {1, 2, 3}}, {"b", {3, 2, 1}}};
  CHECK(render_curves_svg(s, "t", "y") == render_curves_svg(s, "t", "y"));
}

}
