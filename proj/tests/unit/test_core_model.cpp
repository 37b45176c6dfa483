#include <cmath>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "gameqd/config.hpp"
#include "gameqd/errors.hpp"
#include "gameqd/mlp.hpp"
#include "gameqd/seed.hpp"

using namespace gameqd;

TEST_SUITE("core_model") {

TEST_CASE("derive_seed is a deterministic function of master and context") {
  CHECK(derive_seed(7, {1, 2, 3}) == derive_seed(7, {1, 2, 3}));
  CHECK(derive_seed(0, {1, 2}) != derive_seed(0, {2, 1}));
  CHECK(derive_seed(0, {1, 2}) != derive_seed(1, {1, 2}));
  CHECK(derive_seed(0, {}) != derive_seed(0, {0}));
}

TEST_CASE("derive_seed matches values from an independent implementation") {
  CHECK(derive_seed(0, {1, 2}) == 0xed86f32337f139f5ULL);
  CHECK(derive_seed(0, {2, 1}) == 0x7ae1e0f109e364a8ULL);
  CHECK(derive_seed(1, {1, 2}) == 0x8c359464ad5f67bdULL);
  CHECK(derive_seed(20240917, {}) == 0x71763309c8187888ULL);
  CHECK(derive_seed(42, {5, 3, 0}) == 0xc1e35936cfec0373ULL);
}

TEST_CASE("genome_dim counts every weight and bias of the 32-16 network") {
  auto count = [](std::size_t in, std::size_t out) {
    const std::size_t layers[][2] = {{in, 32}, {32, 16}, {16, out}};
    std::size_t total = 0;
    for (const auto& l : layers) total += l[0] * l[1] + l[1];
    return total;
  };
  CHECK(genome_dim(EnvId::kPong, Side::kRed) == 769);
  CHECK(genome_dim(EnvId::kPong, Side::kBlue) == 769);
  CHECK(genome_dim(EnvId::kCatMouse, Side::kRed) == 737);
  CHECK(genome_dim(EnvId::kCatMouse, Side::kBlue) == 737);
  CHECK(genome_dim(EnvId::kPursuit, Side::kRed) == 929);
  CHECK(genome_dim(EnvId::kPursuit, Side::kBlue) == 929);
  CHECK(count(6, 1) == 769);
  CHECK(count(5, 1) == 737);
  CHECK(count(11, 1) == 929);
}

TEST_CASE("zero genome outputs zero for any input") {
  const Genome g = zero_genome(EnvId::kPursuit, Side::kBlue);
  const std::vector<double> x(11, 0.7);
  CHECK(mlp_forward(g, x) == std::vector<double>{0.0});
}

TEST_CASE("mlp forward is pure") {
  Rng rng = make_rng(3);
  const Genome g = random_genome(EnvId::kPong, Side::kRed, rng);
  const std::vector<double> x{0.1, -0.2, 0.3, 0.4, -0.5, 0.6};
  CHECK(mlp_forward(g, x) == mlp_forward(g, x));
}

TEST_CASE("a single large weight chain saturates the output") {
  // Route input 0 through one unit per layer with weight 1000.
  const std::size_t in = 5;
  std::vector<double> p(genome_dim(EnvId::kCatMouse, Side::kRed), 0.0);
  p[0] = 1000.0;                            // layer 1, unit 0, input 0
  const std::size_t l2 = in * 32 + 32;
  p[l2] = 1000.0;                           // layer 2, unit 0, input 0
  const std::size_t l3 = l2 + 32 * 16 + 16;
  p[l3] = 1000.0;                           // output, input 0
  const Genome g(Side::kRed, EnvId::kCatMouse, p);
  const std::vector<double> x{1.0, 0.0, 0.0, 0.0, 0.0};
  CHECK(std::fabs(mlp_forward(g, x)[0] - 1.0) < 1e-6);
}

TEST_CASE("mlp forward matches a naive layer-by-layer evaluation") {
  Rng rng = make_rng(11);
  const Genome g = random_genome(EnvId::kPursuit, Side::kRed, rng);
  std::vector<double> x(11);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(static_cast<double>(i));
  const auto params = g.params();
  std::size_t at = 0;
  std::vector<double> act = x;
  for (std::size_t width : {32u, 16u, 1u}) {
    std::vector<double> next(width);
    for (std::size_t o = 0; o < width; ++o) {
      double s = 0.0;
      for (std::size_t i = 0; i < act.size(); ++i) s += params[at + o * act.size() + i] * act[i];
      next[o] = s;
    }
    at += width * act.size();
    for (std::size_t o = 0; o < width; ++o) next[o] = std::tanh(next[o] + params[at + o]);
    at += width;
    act = next;
  }
  CHECK(at == g.size());
  CHECK(mlp_forward(g, x)[0] == doctest::Approx(act[0]).epsilon(1e-12));
}

TEST_CASE("config files parse, validate, and round-trip canonically") {
  std::istringstream in(
      "# desk run\n"
      "env = pong\n"
      "master_seed = 99   # trailing comment\n"
      "n_gen = 3\n"
      "mutation_sigma = 0.25\n"
      "pong.speedup = 1.1\n");
  const RunConfig c = run_config_from(parse_key_values(in));
  CHECK(c.env == EnvId::kPong);
  CHECK(c.master_seed == 99);
  CHECK(c.n_gen == 3);
  CHECK(c.mutation_sigma == 0.25);
  CHECK(c.env_params.pong.speedup == 1.1);
  c.validate();

  std::istringstream again(to_canonical_text(c));
  const RunConfig back = run_config_from(parse_key_values(again));
  CHECK(to_canonical_text(back) == to_canonical_text(c));
  CHECK(config_hash(back) == config_hash(c));

  RunConfig other = c;
  other.master_seed = 100;
  CHECK(config_hash(other) != config_hash(c));
}

TEST_CASE("config errors are reported as ConfigError") {
  std::istringstream no_seed("env = pong\n");
  CHECK_THROWS_AS(run_config_from(parse_key_values(no_seed)), ConfigError);
  std::istringstream bad_line("env pong\n");
  CHECK_THROWS_AS(parse_key_values(bad_line), ConfigError);
  RunConfig c;
  CHECK_THROWS_AS(apply_run_config_key(c, "n_gen", "three"), ConfigError);
  CHECK_THROWS_AS(apply_run_config_key(c, "no_such_key", "1"), ConfigError);
  c.n_budget = 10;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.env_params.cat_mouse.d_init = 0.1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(format_hash(0xaf63dc4c8601ec8cULL) == "af63dc4c8601ec8c");
}

}
