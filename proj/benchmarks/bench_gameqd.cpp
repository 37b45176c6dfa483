#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "gameqd/archive/growing_archive.hpp"
#include "gameqd/env/environment.hpp"
#include "gameqd/measures/measures.hpp"
#include "gameqd/mlp.hpp"
#include "gameqd/selection/kmeans.hpp"

namespace {

using namespace gameqd;

void BM_Duel(benchmark::State& state) {
  const auto env = static_cast<EnvId>(state.range(0));
  const EnvParams params;
  Rng rng = make_rng(1);
  const Genome red = random_genome(env, Side::kRed, rng);
  const Genome blue = random_genome(env, Side::kBlue, rng);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_duel(env, params, red, blue, ++seed));
  }
  state.SetLabel(std::string(to_string(env)));
}
BENCHMARK(BM_Duel)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ArchiveUpdate(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(2);
  const Genome g = zero_genome(EnvId::kCatMouse, Side::kRed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<BehaviorDescriptor> behaviors;
  std::vector<double> fitness;
  for (int i = 0; i < 4096; ++i) {
    std::vector<double> b(dim);
    for (double& x : b) x = u(rng);
    behaviors.emplace_back(std::move(b));
    fitness.push_back(u(rng));
  }
  std::size_t i = 0;
  GrowingArchive archive(5, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(archive.update(g, fitness[i], behaviors[i]));
    i = (i + 1) % behaviors.size();
  }
}
BENCHMARK(BM_ArchiveUpdate)->Arg(4)->Arg(512);

void BM_Aqd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n * n);
  for (double& x : v) x = u(rng) * 0.9 + 0.3;
  const FitnessMatrix m = FitnessMatrix::from_values(n, n, v);
  std::vector<std::size_t> rows(n / 5);
  for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = r * 5;
  for (auto _ : state) benchmark::DoNotOptimize(aqd_score(m, rows));
}
BENCHMARK(BM_Aqd)->Arg(40)->Arg(160);

void BM_KMeans(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(4);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<double>> points(n, std::vector<double>(n / 5));
  for (auto& p : points)
    for (double& x : p) x = normal(rng);
  for (auto _ : state) benchmark::DoNotOptimize(kmeans(points, 8, 5));
}
BENCHMARK(BM_KMeans)->Arg(40)->Arg(160);

}  // namespace

BENCHMARK_MAIN();
