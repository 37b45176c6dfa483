#include <cmath>
#include <vector>

#include <doctest.h>

#include "gameqd/errors.hpp"
#include "gameqd/game/game_runner.hpp"
#include "gameqd/mlp.hpp"
#include "gameqd/mtmb/mtmb.hpp"
#include "gameqd/seed.hpp"
#include "support/fixtures.hpp"

using namespace gameqd;

namespace {

bool same_archives(const std::vector<GrowingArchive>& a, const std::vector<GrowingArchive>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t].size() != b[t].size()) return false;
    for (std::size_t c = 0; c < a[t].size(); ++c) {
      const auto& x = a[t].elites()[c];
      const auto& y = b[t].elites()[c];
      if (!(x.genome == y.genome) || x.fitness != y.fitness || !(x.behavior == y.behavior)) return false;
      if (!(a[t].centroids()[c] == b[t].centroids()[c])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("mtmb_me") {

TEST_CASE("mutation rate zero copies the parent") {
  Rng rng = make_rng(1);
  const Genome parent = random_genome(EnvId::kCatMouse, Side::kRed, rng);
  CHECK(mutate(parent, 5, 0.0, 0.1) == parent);
}

TEST_CASE("mutation perturbs exactly round(rate * size) parameters") {
  Rng rng = make_rng(2);
  const Genome parent = random_genome(EnvId::kPong, Side::kBlue, rng);
  const auto expected = static_cast<std::size_t>(std::lround(0.3 * static_cast<double>(parent.size())));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Genome child = mutate(parent, seed, 0.3, 0.1);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) changed += child.params()[i] != parent.params()[i];
    CHECK(changed == expected);
  }
  // Ten parameters at rate 0.3 give exactly three changes.
  CHECK(std::lround(0.3 * 10) == 3);
}

TEST_CASE("mutation noise has the configured standard deviation") {
  const Genome parent = zero_genome(EnvId::kCatMouse, Side::kRed);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;
  for (std::uint64_t seed = 0; seed < 100000; ++seed) {
    const Genome child = mutate(parent, seed, 0.01, 0.1);  // 7 of 737 parameters
    for (double v : child.params()) {
      if (v != 0.0) {
        sum += v;
        sum_sq += v * v;
        ++n;
      }
    }
  }
  const double mean = sum / static_cast<double>(n);
  const double sigma = std::sqrt(sum_sq / static_cast<double>(n) - mean * mean);
  CHECK(n == 700000);
  CHECK(std::fabs(sigma - 0.1) < 0.005);
}

TEST_CASE("zero budget leaves exactly the bootstrap elites") {
  const RunConfig config = support::tiny_config();
  const TaskSet tasks = initial_tasks(config);
  Rng rng = make_rng(9);
  BootstrapSet boot;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    std::vector<double> b(10, 0.0);
    b[t] = 1.0;
    boot.push_back({t, random_genome(config.env, Side::kRed, rng), 0.25 * static_cast<double>(t + 1),
                    BehaviorDescriptor(b)});
  }
  MtmbOptions options;
  options.budget = 0;
  const MtmbResult r = run_mtmb(tasks, Side::kRed, boot, config, options);
  CHECK(r.evaluations == 0);
  REQUIRE(r.archives.size() == tasks.size());
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    REQUIRE(r.archives[t].size() == 1);
    CHECK(r.archives[t].elites()[0].genome == boot[t].genome);
    CHECK(r.archives[t].elites()[0].fitness == boot[t].fitness);
  }
}

TEST_CASE("candidates stay random until the archives hold n_init elites") {
  RunConfig config = support::tiny_config();
  config.n_budget = 50;
  config.n_init = 50;
  config.n_task = 10;
  config.n_cell = 5;
  config.validate();
  const TaskSet tasks = initial_tasks(config);
  std::size_t random = 0;
  MtmbOptions options;
  options.budget = 50;
  options.on_evaluation = [&](const EvaluationRecord& r) {
    random += r.provenance.kind == CandidateProvenance::Kind::kRandom;
  };
  const MtmbResult r = run_mtmb(tasks, Side::kRed, {}, config, options);
  CHECK(r.evaluations == 50);
  CHECK(r.random_candidates == 50);
  CHECK(r.mutated_candidates == 0);
  CHECK(random == 50);
}

TEST_CASE("mutation starts once the guard is met") {
  RunConfig config = support::tiny_config();
  config.n_budget = 60;
  config.n_init = 3;
  const TaskSet tasks = initial_tasks(config);
  MtmbOptions options;
  options.budget = 60;
  const MtmbResult r = run_mtmb(tasks, Side::kRed, {}, config, options);
  CHECK(r.mutated_candidates > 0);
  CHECK(r.random_candidates >= 3);
  CHECK(r.random_candidates + r.mutated_candidates == 60);
}

TEST_CASE("runs repeat exactly and do not depend on worker count or batch") {
  RunConfig config = support::tiny_config();
  const TaskSet tasks = initial_tasks(config);
  MtmbOptions options;
  options.budget = config.n_budget;
  const MtmbResult a = run_mtmb(tasks, Side::kRed, {}, config, options);
  options.workers = 3;
  const MtmbResult b = run_mtmb(tasks, Side::kRed, {}, config, options);
  CHECK(same_archives(a.archives, b.archives));
  config.batch_size = 4;
  const MtmbResult c = run_mtmb(tasks, Side::kRed, {}, config, options);
  const MtmbResult d = run_mtmb(tasks, Side::kRed, {}, config, options);
  CHECK(same_archives(c.archives, d.archives));
}

TEST_CASE("tasks must play the opposite side") {
  const RunConfig config = support::tiny_config();
  const TaskSet tasks = initial_tasks(config);
  CHECK_THROWS_AS(run_mtmb(tasks, Side::kBlue, {}, config, {}), UsageError);
}

}
