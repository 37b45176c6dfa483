#include "gameqd/mlp.hpp"

#include <cmath>
#include <random>
#include <string>

#include "gameqd/errors.hpp"

namespace gameqd {
namespace {

// tanh through one exp call away from zero, within 1 ulp of std::tanh.
double fast_tanh(double x) {
  const double a = std::fabs(x);
  if (a < 0.625) return std::tanh(x);
  if (a > 22.0) return std::copysign(1.0, x);
  return std::copysign(1.0 - 2.0 / (std::exp(2.0 * a) + 1.0), x);
}

// One dense tanh layer; returns the offset just past its parameters.
std::size_t dense_tanh(std::span<const double> params, std::size_t offset,
                       std::span<const double> in, std::span<double> out) {
  const std::size_t n_in = in.size();
  const double* w = params.data() + offset;
  const double* b = w + out.size() * n_in;
  for (std::size_t o = 0; o < out.size(); ++o) {
    const double* row = w + o * n_in;
    double acc = b[o];
    for (std::size_t i = 0; i < n_in; ++i) acc += row[i] * in[i];
    out[o] = fast_tanh(acc);
  }
  return offset + out.size() * n_in + out.size();
}

}  // namespace

std::size_t genome_dim(EnvId env, Side side) {
  const PolicyShape shape = policy_shape(env, side);
  return mlp_param_count(shape.inputs, shape.actions);
}

MlpPolicy::MlpPolicy(const Genome& genome) : genome_(genome) {
  const PolicyShape shape = policy_shape(genome.env(), genome.side());
  inputs_ = shape.inputs;
  actions_ = shape.actions;
}

void MlpPolicy::act(std::span<const double> input, std::span<double> out) const {
  if (input.size() != inputs_ || out.size() != actions_) {
    throw ConfigError("policy expects " + std::to_string(inputs_) + " inputs and " +
                      std::to_string(actions_) + " outputs, got " +
                      std::to_string(input.size()) + " and " + std::to_string(out.size()));
  }
  std::array<double, kHidden1> h1{};
  std::array<double, kHidden2> h2{};
  const auto params = genome_.params();
  std::size_t offset = dense_tanh(params, 0, input, h1);
  offset = dense_tanh(params, offset, h1, h2);
  dense_tanh(params, offset, h2, out);
}

std::vector<double> mlp_forward(const Genome& genome, std::span<const double> input) {
  MlpPolicy policy(genome);
  std::vector<double> out(policy.actions());
  policy.act(input, out);
  return out;
}

Genome random_genome(EnvId env, Side side, Rng& rng) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<double> params(genome_dim(env, side));
  for (double& p : params) p = uniform(rng);
  return Genome(side, env, std::move(params));
}

Genome zero_genome(EnvId env, Side side) {
  return Genome(side, env, std::vector<double>(genome_dim(env, side), 0.0));
}

}  // namespace gameqd
