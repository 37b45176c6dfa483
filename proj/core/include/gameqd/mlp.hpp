#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "gameqd/seed.hpp"
#include "gameqd/types.hpp"

namespace gameqd {

inline constexpr std::size_t kHidden1 = 32;
inline constexpr std::size_t kHidden2 = 16;

// Parameter count of an inputs -> 32 -> 16 -> actions network.
constexpr std::size_t mlp_param_count(std::size_t inputs, std::size_t actions) noexcept {
  return (inputs * kHidden1 + kHidden1) + (kHidden1 * kHidden2 + kHidden2) +
         (kHidden2 * actions + actions);
}

std::size_t genome_dim(EnvId env, Side side);

// Fixed 32-16 tanh network read directly out of a genome.
//
// Parameter layout, layers in forward order, each layer as
//   weights[out][in] (row-major, one row per output neuron) followed by biases[out].
// Every layer, including the output, applies tanh.
class MlpPolicy {
 public:
  explicit MlpPolicy(const Genome& genome);

  std::size_t inputs() const noexcept { return inputs_; }
  std::size_t actions() const noexcept { return actions_; }

  // out.size() must equal actions(); input.size() must equal inputs().
  void act(std::span<const double> input, std::span<double> out) const;

 private:
  Genome genome_;
  std::size_t inputs_;
  std::size_t actions_;
};

std::vector<double> mlp_forward(const Genome& genome, std::span<const double> input);

// Parameters i.i.d. uniform in [-1, 1].
Genome random_genome(EnvId env, Side side, Rng& rng);

Genome zero_genome(EnvId env, Side side);

}  // namespace gameqd
